#pragma once

#include <string>
#include <vector>

#include "sric/core.hpp"
#include "sric/ingest.hpp"

namespace sric {

enum class Strategy { SRIC, AIC, EQUAL_WEIGHT, MARKOWITZ };

std::string to_string(Strategy s);
/// Inverse of to_string; throws ConfigError on an unknown name.
Strategy strategy_from_string(const std::string& name);

struct BacktestConfig {
    int lookback_months = 12;
    double target_vol = 0.10;  // annualized
    std::vector<Strategy> criteria{Strategy::SRIC, Strategy::AIC, Strategy::EQUAL_WEIGHT,
                                   Strategy::MARKOWITZ};
    int max_factors = 10;
    double cost = 0.0;  // per-parameter cost for the post-hoc sric_net column

    void validate() const;
};

/// Monthly out-of-sample record of one strategy. Index i refers to
/// BacktestReport::months[i].
struct StrategySeries {
    Strategy strategy = Strategy::SRIC;
    std::vector<double> returns;     // realized return of the held portfolio over the month
    std::vector<double> cumulative;  // running sum of returns
    std::vector<int> selected_dim;   // 0 for months without a position
    std::vector<Vector> weights;     // asset weights held during the month
    std::vector<double> insample_vol;
    std::vector<double> insample_sric_net;  // NaN without a position or when SRIC is undefined
    double oos_sharpe = 0.0;
    double mean_insample_sric_net = 0.0;
};

struct BacktestReport {
    BacktestConfig config;
    std::vector<Date> months;  // first trading date of each held month
    std::vector<StrategySeries> series;
    std::vector<Date> degenerate_months;  // skipped windows (no position)
    int periods_per_year = 252;

    const StrategySeries& at(Strategy s) const;
};

/// mean / std (n - 1) of monthly returns times sqrt(12); 0 when the series
/// has fewer than two points or no dispersion.
double annualized_sharpe(const std::vector<double>& monthly_returns);

/// Rebalance at the first period of every calendar month after the first
/// `lookback_months` months present in the panel. The window is the previous
/// `lookback_months` months. Throws DomainError when the panel covers no more
/// than lookback_months + 1 months.
BacktestReport run_rolling(const ReturnsPanel& panel, const BacktestConfig& config);

/// One report per lookback, run on up to `workers` threads; results do not
/// depend on the worker count.
std::vector<BacktestReport> run_lookback_sweep(const ReturnsPanel& panel, const BacktestConfig& base,
                                               const std::vector<int>& lookbacks, unsigned workers = 1);

}  // namespace sric
