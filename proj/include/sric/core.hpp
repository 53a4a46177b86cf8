#pragma once

#include <memory>

#include <Eigen/Dense>

#include "sric/errors.hpp"

namespace sric {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Annualized covariance of the return vector.
///
/// Validated (symmetric, strictly positive definite) and Cholesky-factorized
/// once at construction. Immutable afterwards; copies share the factor.
class CovMatrix {
public:
    /// Symmetry tolerance (absolute, entrywise).
    static constexpr double kSymmetryTolerance = 1e-10;
    /// A Cholesky pivot must exceed this fraction of the largest diagonal entry.
    static constexpr double kRelativePivotFloor = 1e-12;

    explicit CovMatrix(const Matrix& entries);

    static CovMatrix identity(Eigen::Index dim);
    static CovMatrix diagonal(const Vector& variances);

    Eigen::Index dim() const noexcept { return state_->entries.rows(); }
    const Matrix& entries() const noexcept { return state_->entries; }
    /// Lower-triangular L with L * L^T = entries().
    const Matrix& cholesky_factor() const noexcept { return state_->lower; }

    /// Sigma^{-1} x via two triangular solves.
    Vector solve(const Vector& x) const;
    /// L^{-1} x.
    Vector whiten(const Vector& x) const;
    /// L x; maps i.i.d. standard normals to N(0, Sigma).
    Vector color(const Vector& z) const;
    /// x^T Sigma x.
    double quadratic_form(const Vector& x) const;

private:
    struct State {
        Matrix entries;
        Matrix lower;
    };
    std::shared_ptr<const State> state_;
};

/// Data-generating truth: true annualized mean, covariance and horizon in years.
struct PopulationModel {
    Vector mu;
    CovMatrix sigma;
    double horizon_years;

    PopulationModel(Vector mu, CovMatrix sigma, double horizon_years);

    Eigen::Index dim() const noexcept { return mu.size(); }
};

/// What a user observes: mu_hat = mu + nu with nu ~ N(0, Sigma / T).
struct SampleEstimate {
    Vector mu_hat;
    CovMatrix sigma;
    double horizon_years;

    SampleEstimate(Vector mu_hat, CovMatrix sigma, double horizon_years);

    Eigen::Index dim() const noexcept { return mu_hat.size(); }
};

/// rho_hat = tau_hat + noise_fit + estimation_error + noise.
struct SharpeDecomposition {
    double rho_hat = 0.0;
    double rho_star = 0.0;
    double tau_hat = 0.0;
    double tau_star = 0.0;
    double noise_fit = 0.0;         // rho_hat - rho_star
    double estimation_error = 0.0;  // tau_star - tau_hat
    double noise = 0.0;             // rho_star - tau_star
};

/// Mean-variance analogue: u_hat(theta_hat) = u(theta_hat) + N + E + U.
struct MVDecomposition {
    double gamma = 1.0;
    double u_hat_at_theta_hat = 0.0;
    double u_hat_at_theta_star = 0.0;
    double u_at_theta_hat = 0.0;
    double u_at_theta_star = 0.0;
    double noise_fit_mv = 0.0;
    double estimation_error_mv = 0.0;
    double noise_mv = 0.0;
};

/// sqrt(x^T Sigma^{-1} x), computed from the cached Cholesky factor.
double mahalanobis_norm(const Vector& x, const CovMatrix& sigma);

/// L^{-1} x; its Euclidean norm equals mahalanobis_norm(x, sigma).
Vector whiten(const Vector& x, const CovMatrix& sigma);

}  // namespace sric
