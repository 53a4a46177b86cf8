#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sric/backtest.hpp"
#include "sric/simulate.hpp"

namespace sric {

/// Experiments accepted by run_simulation.
const std::vector<std::string>& experiment_names();

/// Builds and runs one experiment from a flat key-value config. Unknown keys,
/// wrong types and out-of-range values are all reported in one ConfigError.
/// `reps` overrides the config's replication count when given.
///
/// Keys (defaults in parentheses):
///   bias:         tau_star (1), k (5), T_grid ([1,2,5,10,20]), reps (10000)
///   select:       n_assets (100), n_true (50), sharpe_low (-0.5), sharpe_high (0.5),
///                 T (5), reps (10000), redraw_truth (true), k_offset (0), gamma (1)
///   frontier:     n_assets (20), true_sharpe (1), pairwise_corr (0.5), T (10), reps (10000)
///   distribution: tau_star (0), k (5), T (1), reps (100000)
///   mv:           tau_star (1), k (5), T (10), gamma (1), reps (100000)
ExperimentReport run_simulation(const std::string& experiment, const nlohmann::json& config,
                                std::uint64_t seed, std::optional<std::int64_t> reps, unsigned workers);

/// report.json, arms.csv and histograms.csv under `dir` (created if needed).
void write_experiment_files(const ExperimentReport& report, const std::filesystem::path& dir);

/// "12" -> {12}; "1:120" or "sweep 1:120" -> {1, ..., 120}.
std::vector<int> parse_lookbacks(const std::string& text);

struct BacktestJob {
    std::filesystem::path data;
    std::optional<std::filesystem::path> riskfree;
    bool riskfree_annualized = false;
    std::string format = "french";  // french | generic
    int periods_per_year = 0;       // 0 keeps the format default
    std::vector<int> lookbacks{12};
    BacktestConfig base;
    unsigned workers = 1;
};

/// Loads the panel (plus optional risk-free series) and runs every lookback.
/// Warnings go to `log`.
std::vector<BacktestReport> run_backtest_job(const BacktestJob& job, std::ostream& log);

/// lookback_<m>.json and lookback_<m>.csv per lookback, plus summary.csv.
void write_backtest_files(const std::vector<BacktestReport>& reports, const std::filesystem::path& dir);

}  // namespace sric
