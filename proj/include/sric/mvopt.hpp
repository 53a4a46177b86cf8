#pragma once

#include <optional>

#include "sric/core.hpp"

namespace sric {

struct SharpeMaximizer {
    Vector theta_hat;  // canonical representative Sigma^{-1} mu_hat of the maximizing ray
    double rho_hat;
};

/// theta_hat = Sigma^{-1} mu_hat, rho_hat = |mu_hat|_{Sigma^{-1}}.
/// Throws DegenerateEstimateError when mu_hat is zero.
SharpeMaximizer max_insample_sharpe(const SampleEstimate& est);

/// mu^T theta / sqrt(theta^T Sigma theta). Pass mu_hat for rho(theta), the
/// true mu for tau(theta).
double sharpe_of(const Vector& theta, const Vector& mu, const CovMatrix& sigma);

/// Exact four-way split of the in-sample Sharpe at the optimum. Requires a
/// non-zero true mean; with mu = 0 rho* is undefined and
/// DegeneratePopulationError is raised.
SharpeDecomposition decompose(const PopulationModel& pop, const SampleEstimate& est);

/// Mean-variance decomposition with u(theta) = 2 m^T theta - gamma theta^T Sigma theta.
/// Defined for mu = 0 as well.
MVDecomposition decompose_mv(const PopulationModel& pop, const SampleEstimate& est, double gamma);

/// Maximize the in-sample Sharpe over theta in span(basis), solved in the
/// reduced coordinates (B^T mu_hat, B^T Sigma B) and embedded back.
/// Throws BasisRankError when the basis columns are linearly dependent.
SharpeMaximizer max_insample_sharpe_subspace(const SampleEstimate& est, const Matrix& basis);

/// In- and out-of-sample Sharpe of the optimum on every leading coordinate
/// block 1..n at once.
///
/// The leading i x i block of the Cholesky factor of Sigma factors the
/// leading block of Sigma, so with w = L^{-1} mu_hat and m = L^{-1} mu:
///   rho_hat_i^2              = sum_{j<i} w_j^2
///   mu_i^T Sigma_i^{-1} mu_hat_i = sum_{j<i} m_j w_j
struct PrefixPath {
    Vector rho_hat;   // in-sample optimum on the first i coordinates
    Vector cross;     // mu_i^T Sigma_i^{-1} mu_hat_i (empty without truth)
    Vector tau_hat;   // out-of-sample Sharpe of that optimum (empty without truth)
    Vector tau_star;  // best attainable true Sharpe on the block (empty without truth)
};

PrefixPath prefix_path(const SampleEstimate& est, const std::optional<Vector>& true_mu = std::nullopt);

}  // namespace sric
