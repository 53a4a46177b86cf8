#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sric/backtest.hpp"
#include "sric/simulate.hpp"

namespace sric {

nlohmann::json to_json(const Summary& s);
nlohmann::json to_json(const Histogram& h);
nlohmann::json to_json(const ExperimentReport& report);
ExperimentReport experiment_from_json(const nlohmann::json& j);

/// Config echo, Sharpe and selection summaries; per-month weights are omitted.
nlohmann::json to_json(const BacktestReport& report);

/// Two-space indented JSON followed by a newline.
void write_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

/// arm, one column per parameter, then mean_<stat> and se_<stat> for every statistic.
void write_arms_csv(std::ostream& out, const ExperimentReport& report);
/// arm, field, lower, upper, count; underflow/overflow rows have an empty bound.
void write_histograms_csv(std::ostream& out, const ExperimentReport& report);
/// date, criterion, return, selected_dim.
void write_backtest_series_csv(std::ostream& out, const BacktestReport& report);
/// lookback, criterion, oos_sharpe, mean_selected_dim, degenerate_months, mean_insample_sric_net.
void write_backtest_summary_csv(std::ostream& out, const std::vector<BacktestReport>& reports);

/// Shortest decimal form that reads back to the same double.
std::string format_double(double x);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Column index by name; throws ParseError when absent.
    std::size_t column(const std::string& name) const;
};

/// Header plus rows; throws ParseError when a row's width differs from the header's.
CsvTable read_csv_table(std::istream& in);
CsvTable read_csv_table(const std::filesystem::path& path);

}  // namespace sric
