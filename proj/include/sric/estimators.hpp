#pragma once

#include <limits>
#include <string_view>

namespace sric {

/// Below this in-sample Sharpe (annualized) the SRIC correction is not evaluated.
inline constexpr double kRhoFloor = 1e-8;

/// Ordered below every finite criterion value; stands in for SRIC as rho_hat -> 0.
inline constexpr double kNegativeSentinel = -std::numeric_limits<double>::infinity();

inline bool is_sentinel(double value) noexcept { return value == kNegativeSentinel; }

enum class Criterion { SRIC, AIC, NEG_AIC_OVER_T, SIEGEL_WOODGATE, IN_SAMPLE_SHARPE };

std::string_view to_string(Criterion c) noexcept;

struct CriterionValue {
    Criterion name;
    double value;
    int k;
    double horizon_years;
};

/// rho_hat - k / (T rho_hat): unbiased for the out-of-sample Sharpe of the
/// in-sample optimum over k Sharpe-relevant parameters.
///
/// Returns kNegativeSentinel when k > 0 and rho_hat <= kRhoFloor.
/// Throws DomainError for rho_hat < 0, k < 0 or T <= 0.
double sric(double rho_hat, int k, double T);

struct SricSplit {
    double noise_fit;
    double estimation_error;
};

/// The SRIC correction divided evenly between noise fit and estimation
/// error, k / (2 T rho_hat) each. Valid to o(1/T) when tau* > 0.
SricSplit sric_split(double rho_hat, int k, double T);

/// AIC = -T rho_hat^2 + 2 (k + 1). Lower is better.
double aic(double rho_hat, int k, double T);
/// -AIC / T = rho_hat^2 - 2 (k + 1) / T; unbiased for out-of-sample
/// mean-variance utility at gamma = 1.
double aic_normalized(double rho_hat, int k, double T);

/// rho_hat - (k - 1) / (T rho_hat). Biased comparator only: it is one degree
/// of freedom short of SRIC and never used for selection.
double siegel_woodgate(double rho_hat, int k, double T);

/// SRIC net of a constant (annualized) Sharpe cost.
double sric_net(double rho_hat, int k, double T, double cost);

CriterionValue evaluate(Criterion c, double rho_hat, int k, double T);

/// Law of rho_hat - tau_hat = |nu| when tau* = 0: chi(k + 1) / sqrt(T).
class NullGapDistribution {
public:
    NullGapDistribution(int k, double T);

    int k() const noexcept { return k_; }
    double horizon_years() const noexcept { return T_; }
    int degrees_of_freedom() const noexcept { return k_ + 1; }

    double mean() const;
    double variance() const;
    double cdf(double x) const;
    double survival(double x) const;
    double quantile(double p) const;

private:
    int k_;
    double T_;
};

NullGapDistribution gap_distribution_null(int k, double T);

/// P(chi(k+1) >= sqrt(T) rho_hat): p-value of H0 tau* = 0.
double sharpe_pvalue(double rho_hat, int k, double T);

enum class GapRegime { NULL_TAU_ZERO, POSITIVE_TAU };

struct UncertaintyMoments {
    double mean_gap;
    double var_gap;
    GapRegime regime;
};

/// First two moments of (1/(T tau*)) Z + N / sqrt(T) with Z ~ chi2(k), N ~ N(0,1);
/// the o(1/T) remainder is not modelled. Requires tau_star > 0.
UncertaintyMoments gap_moments_positive(double tau_star, int k, double T);

/// Moments of the exact null law, for callers that have chosen tau* = 0.
UncertaintyMoments gap_moments_null(int k, double T);

struct Interval {
    double lower;
    double upper;
};

/// Central interval for tau_hat under tau* = 0: rho_hat minus the
/// [(1+level)/2, (1-level)/2] quantiles of the null gap.
Interval null_tau_interval(double rho_hat, int k, double T, double level);

}  // namespace sric
