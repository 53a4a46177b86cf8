#include "sric/mvopt.hpp"

#include <cmath>

namespace sric {

namespace {

void require_same_model(const PopulationModel& pop, const SampleEstimate& est) {
    if (pop.dim() != est.dim()) {
        throw DimensionError("population and estimate have different dimensions");
    }
}

}  // namespace

SharpeMaximizer max_insample_sharpe(const SampleEstimate& est) {
    if (est.mu_hat.isZero(0.0)) {
        throw DegenerateEstimateError("estimated mean is zero; in-sample Sharpe is undefined");
    }
    Vector theta = est.sigma.solve(est.mu_hat);
    const double rho = mahalanobis_norm(est.mu_hat, est.sigma);
    return {std::move(theta), rho};
}

double sharpe_of(const Vector& theta, const Vector& mu, const CovMatrix& sigma) {
    if (theta.size() != mu.size()) throw DimensionError("theta and mean differ in length");
    const double var = sigma.quadratic_form(theta);
    if (theta.isZero(0.0) || !(var > 0.0)) {
        throw DomainError("Sharpe ratio of the zero position is undefined");
    }
    return mu.dot(theta) / std::sqrt(var);
}

SharpeDecomposition decompose(const PopulationModel& pop, const SampleEstimate& est) {
    require_same_model(pop, est);
    if (pop.mu.isZero(0.0)) {
        throw DegeneratePopulationError(
            "true mean is zero: rho* is undefined, use the tau* = 0 null-regime quantities");
    }
    if (est.mu_hat.isZero(0.0)) {
        throw DegenerateEstimateError("estimated mean is zero; in-sample Sharpe is undefined");
    }

    const Vector w = est.sigma.whiten(est.mu_hat);
    const Vector m = est.sigma.whiten(pop.mu);
    const double rho_hat = w.norm();
    const double tau_star = m.norm();
    const double inner = m.dot(w);

    SharpeDecomposition d;
    d.rho_hat = rho_hat;
    d.tau_star = tau_star;
    d.tau_hat = inner / rho_hat;
    d.rho_star = inner / tau_star;
    d.noise_fit = d.rho_hat - d.rho_star;
    d.estimation_error = d.tau_star - d.tau_hat;
    d.noise = d.rho_star - d.tau_star;
    return d;
}

MVDecomposition decompose_mv(const PopulationModel& pop, const SampleEstimate& est, double gamma) {
    require_same_model(pop, est);
    if (!(gamma > 0.0)) throw DomainError("risk aversion gamma must be positive");

    // Utilities at theta_hat = Sigma^{-1} mu_hat / gamma and theta* = Sigma^{-1} mu / gamma,
    // written through whitened means: every term is an inner product of w and m.
    const Vector w = est.sigma.whiten(est.mu_hat);
    const Vector m = est.sigma.whiten(pop.mu);
    const double ww = w.squaredNorm();
    const double mm = m.squaredNorm();
    const double mw = m.dot(w);

    MVDecomposition d;
    d.gamma = gamma;
    d.u_hat_at_theta_hat = ww / gamma;
    d.u_hat_at_theta_star = (2.0 * mw - mm) / gamma;
    d.u_at_theta_hat = (2.0 * mw - ww) / gamma;
    d.u_at_theta_star = mm / gamma;
    d.noise_fit_mv = d.u_hat_at_theta_hat - d.u_hat_at_theta_star;
    d.estimation_error_mv = d.u_at_theta_star - d.u_at_theta_hat;
    d.noise_mv = d.u_hat_at_theta_star - d.u_at_theta_star;
    return d;
}

SharpeMaximizer max_insample_sharpe_subspace(const SampleEstimate& est, const Matrix& basis) {
    if (basis.rows() != est.dim()) {
        throw DimensionError("basis rows must equal the estimate dimension");
    }
    if (basis.cols() == 0) throw BasisRankError("basis has no columns");

    Eigen::ColPivHouseholderQR<Matrix> qr(basis);
    if (qr.rank() < basis.cols()) {
        throw BasisRankError("basis columns are linearly dependent");
    }

    const Matrix reduced_cov = basis.transpose() * est.sigma.entries() * basis;
    Vector reduced_mu = basis.transpose() * est.mu_hat;
    CovMatrix reduced_sigma = [&] {
        try {
            return CovMatrix(0.5 * (reduced_cov + reduced_cov.transpose()));
        } catch (const NotPositiveDefiniteError&) {
            throw BasisRankError("basis spans a numerically degenerate subspace");
        }
    }();
    const SampleEstimate reduced(std::move(reduced_mu), std::move(reduced_sigma), est.horizon_years);
    SharpeMaximizer inner = max_insample_sharpe(reduced);
    return {basis * inner.theta_hat, inner.rho_hat};
}

PrefixPath prefix_path(const SampleEstimate& est, const std::optional<Vector>& true_mu) {
    const Eigen::Index n = est.dim();
    const Vector w = est.sigma.whiten(est.mu_hat);

    PrefixPath path;
    path.rho_hat.resize(n);
    double ww = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        ww += w[i] * w[i];
        path.rho_hat[i] = std::sqrt(ww);
    }
    if (!true_mu) return path;

    const Vector m = est.sigma.whiten(*true_mu);
    path.cross.resize(n);
    path.tau_hat.resize(n);
    path.tau_star.resize(n);
    double mw = 0.0;
    double mm = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        mw += m[i] * w[i];
        mm += m[i] * m[i];
        path.cross[i] = mw;
        path.tau_star[i] = std::sqrt(mm);
        path.tau_hat[i] = path.rho_hat[i] > 0.0 ? mw / path.rho_hat[i] : 0.0;
    }
    return path;
}

}  // namespace sric
