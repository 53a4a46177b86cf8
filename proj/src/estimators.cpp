#include "sric/estimators.hpp"

#include <cmath>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "sric/errors.hpp"

namespace sric {

namespace {

void check_common(double rho_hat, int k, double T) {
    if (!(rho_hat >= 0.0) || !std::isfinite(rho_hat)) {
        throw DomainError("in-sample Sharpe must be a finite non-negative number (it is a norm), got " +
                          std::to_string(rho_hat));
    }
    if (k < 0) throw DomainError("k must be non-negative");
    if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("T must be positive and finite");
}

bool below_floor(double rho_hat, int k) { return k > 0 && rho_hat <= kRhoFloor; }

}  // namespace

std::string_view to_string(Criterion c) noexcept {
    switch (c) {
        case Criterion::SRIC: return "SRIC";
        case Criterion::AIC: return "AIC";
        case Criterion::NEG_AIC_OVER_T: return "NEG_AIC_OVER_T";
        case Criterion::SIEGEL_WOODGATE: return "SIEGEL_WOODGATE";
        case Criterion::IN_SAMPLE_SHARPE: return "IN_SAMPLE_SHARPE";
    }
    return "UNKNOWN";
}

double sric(double rho_hat, int k, double T) {
    check_common(rho_hat, k, T);
    if (k == 0) return rho_hat;
    if (below_floor(rho_hat, k)) return kNegativeSentinel;
    return rho_hat - k / (T * rho_hat);
}

SricSplit sric_split(double rho_hat, int k, double T) {
    check_common(rho_hat, k, T);
    if (k == 0) return {0.0, 0.0};
    if (below_floor(rho_hat, k)) return {-kNegativeSentinel, -kNegativeSentinel};
    const double half = k / (2.0 * T * rho_hat);
    return {half, half};
}

double aic(double rho_hat, int k, double T) {
    check_common(rho_hat, k, T);
    return -T * rho_hat * rho_hat + 2.0 * (k + 1);
}

double aic_normalized(double rho_hat, int k, double T) {
    check_common(rho_hat, k, T);
    return rho_hat * rho_hat - 2.0 * (k + 1) / T;
}

double siegel_woodgate(double rho_hat, int k, double T) {
    check_common(rho_hat, k, T);
    if (k == 1) return rho_hat;
    if (below_floor(rho_hat, k)) return kNegativeSentinel;
    if (rho_hat == 0.0) return std::numeric_limits<double>::infinity();  // k == 0: rho + 1/(T rho)
    return rho_hat - (k - 1) / (T * rho_hat);
}

double sric_net(double rho_hat, int k, double T, double cost) {
    if (!(cost >= 0.0) || !std::isfinite(cost)) throw DomainError("cost must be non-negative");
    const double s = sric(rho_hat, k, T);
    return is_sentinel(s) ? s : s - cost;
}

CriterionValue evaluate(Criterion c, double rho_hat, int k, double T) {
    double value = 0.0;
    switch (c) {
        case Criterion::SRIC: value = sric(rho_hat, k, T); break;
        case Criterion::AIC: value = aic(rho_hat, k, T); break;
        case Criterion::NEG_AIC_OVER_T: value = aic_normalized(rho_hat, k, T); break;
        case Criterion::SIEGEL_WOODGATE: value = siegel_woodgate(rho_hat, k, T); break;
        case Criterion::IN_SAMPLE_SHARPE:
            check_common(rho_hat, k, T);
            value = rho_hat;
            break;
    }
    return {c, value, k, T};
}

NullGapDistribution::NullGapDistribution(int k, double T) : k_(k), T_(T) {
    if (k < 0) throw DomainError("k must be non-negative");
    if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("T must be positive and finite");
}

double NullGapDistribution::mean() const {
    const double df = k_ + 1.0;
    const double log_ratio = std::lgamma((df + 1.0) / 2.0) - std::lgamma(df / 2.0);
    return std::sqrt(2.0 / T_) * std::exp(log_ratio);
}

double NullGapDistribution::variance() const {
    const double m = mean();
    return (k_ + 1.0) / T_ - m * m;
}

double NullGapDistribution::cdf(double x) const {
    if (x <= 0.0) return 0.0;
    return boost::math::gamma_p((k_ + 1.0) / 2.0, T_ * x * x / 2.0);
}

double NullGapDistribution::survival(double x) const {
    if (x <= 0.0) return 1.0;
    return boost::math::gamma_q((k_ + 1.0) / 2.0, T_ * x * x / 2.0);
}

double NullGapDistribution::quantile(double p) const {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("quantile probability must lie in [0, 1]");
    if (p == 0.0) return 0.0;
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    const double half_chi2 = boost::math::gamma_p_inv((k_ + 1.0) / 2.0, p);
    return std::sqrt(2.0 * half_chi2 / T_);
}

NullGapDistribution gap_distribution_null(int k, double T) { return NullGapDistribution(k, T); }

double sharpe_pvalue(double rho_hat, int k, double T) {
    check_common(rho_hat, k, T);
    return NullGapDistribution(k, T).survival(rho_hat);
}

UncertaintyMoments gap_moments_positive(double tau_star, int k, double T) {
    if (!(tau_star > 0.0)) {
        throw DomainError("gap_moments_positive requires tau_star > 0; use the null-regime law for tau_star = 0");
    }
    if (k < 0) throw DomainError("k must be non-negative");
    if (!(T > 0.0)) throw DomainError("T must be positive");
    const double scale = 1.0 / (T * tau_star);
    return {k * scale, 2.0 * k * scale * scale + 1.0 / T, GapRegime::POSITIVE_TAU};
}

UncertaintyMoments gap_moments_null(int k, double T) {
    const NullGapDistribution law(k, T);
    return {law.mean(), law.variance(), GapRegime::NULL_TAU_ZERO};
}

Interval null_tau_interval(double rho_hat, int k, double T, double level) {
    check_common(rho_hat, k, T);
    if (!(level > 0.0 && level < 1.0)) throw DomainError("interval level must lie in (0, 1)");
    const NullGapDistribution law(k, T);
    const double tail = (1.0 - level) / 2.0;
    return {rho_hat - law.quantile(1.0 - tail), rho_hat - law.quantile(tail)};
}

}  // namespace sric
