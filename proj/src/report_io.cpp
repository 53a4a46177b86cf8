#include "sric/report_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <set>

#include "sric/errors.hpp"
#include "sric/ingest.hpp"

namespace sric {

namespace {

double number_or_nan(const nlohmann::json& j) {
    return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

nlohmann::json number_or_null(double x) {
    return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}

Summary summary_from_json(const nlohmann::json& j) {
    Summary s;
    s.mean = number_or_nan(j.at("mean"));
    s.variance = number_or_nan(j.at("variance"));
    s.se = number_or_nan(j.at("se"));
    s.count = j.at("count").get<std::int64_t>();
    return s;
}

Histogram histogram_from_json(const nlohmann::json& j) {
    Histogram h;
    h.lower = j.at("lower").get<double>();
    h.width = j.at("width").get<double>();
    h.counts = j.at("counts").get<std::vector<std::int64_t>>();
    h.underflow = j.at("underflow").get<std::int64_t>();
    h.overflow = j.at("overflow").get<std::int64_t>();
    return h;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

double mean_positive_dim(const StrategySeries& s) {
    double sum = 0.0;
    int count = 0;
    for (int d : s.selected_dim) {
        if (d > 0) {
            sum += d;
            ++count;
        }
    }
    return count ? sum / count : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

nlohmann::json to_json(const Summary& s) {
    return {{"mean", number_or_null(s.mean)},
            {"variance", number_or_null(s.variance)},
            {"se", number_or_null(s.se)},
            {"count", s.count}};
}

nlohmann::json to_json(const Histogram& h) {
    return {{"lower", h.lower},
            {"width", h.width},
            {"counts", h.counts},
            {"underflow", h.underflow},
            {"overflow", h.overflow}};
}

nlohmann::json to_json(const ExperimentReport& report) {
    nlohmann::json j;
    j["experiment"] = report.experiment;
    j["config"] = report.config;
    j["master_seed"] = report.master_seed;
    j["replications"] = report.replications;
    nlohmann::json arms = nlohmann::json::array();
    for (const auto& a : report.arms) {
        nlohmann::json arm;
        arm["label"] = a.label;
        arm["params"] = a.params;
        arm["stats"] = nlohmann::json::object();
        for (const auto& [name, s] : a.stats) arm["stats"][name] = to_json(s);
        arm["histograms"] = nlohmann::json::object();
        for (const auto& [name, h] : a.histograms) arm["histograms"][name] = to_json(h);
        arms.push_back(std::move(arm));
    }
    j["arms"] = std::move(arms);
    j["scalars"] = nlohmann::json::object();
    for (const auto& [name, v] : report.scalars) j["scalars"][name] = number_or_null(v);
    j["comparisons"] = nlohmann::json::object();
    for (const auto& [name, s] : report.comparisons) j["comparisons"][name] = to_json(s);
    return j;
}

ExperimentReport experiment_from_json(const nlohmann::json& j) {
    try {
        ExperimentReport r;
        r.experiment = j.at("experiment").get<std::string>();
        r.config = j.at("config");
        r.master_seed = j.at("master_seed").get<std::uint64_t>();
        r.replications = j.at("replications").get<std::int64_t>();
        for (const auto& a : j.at("arms")) {
            ArmReport arm;
            arm.label = a.at("label").get<std::string>();
            for (const auto& [name, v] : a.at("params").items()) arm.params[name] = number_or_nan(v);
            for (const auto& [name, v] : a.at("stats").items()) arm.stats[name] = summary_from_json(v);
            for (const auto& [name, v] : a.at("histograms").items()) arm.histograms[name] = histogram_from_json(v);
            r.arms.push_back(std::move(arm));
        }
        for (const auto& [name, v] : j.at("scalars").items()) r.scalars[name] = number_or_nan(v);
        for (const auto& [name, v] : j.at("comparisons").items()) r.comparisons[name] = summary_from_json(v);
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed experiment report: ") + e.what(), 0);
    }
}

nlohmann::json to_json(const BacktestReport& report) {
    nlohmann::json j;
    j["lookback_months"] = report.config.lookback_months;
    j["target_vol"] = report.config.target_vol;
    j["max_factors"] = report.config.max_factors;
    j["cost"] = report.config.cost;
    j["periods_per_year"] = report.periods_per_year;
    std::vector<std::string> months, gaps;
    for (const auto& d : report.months) months.push_back(d.iso());
    for (const auto& d : report.degenerate_months) gaps.push_back(d.iso());
    j["months"] = months;
    j["degenerate_months"] = gaps;
    nlohmann::json strategies = nlohmann::json::array();
    for (const auto& s : report.series) {
        strategies.push_back({{"criterion", to_string(s.strategy)},
                              {"oos_sharpe", s.oos_sharpe},
                              {"mean_selected_dim", number_or_null(mean_positive_dim(s))},
                              {"mean_insample_sric_net", number_or_null(s.mean_insample_sric_net)},
                              {"returns", s.returns},
                              {"cumulative", s.cumulative},
                              {"selected_dim", s.selected_dim}});
    }
    j["strategies"] = std::move(strategies);
    return j;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << j.dump(2) << '\n';
    if (!out) throw Error("write failed: " + path.string());
}

nlohmann::json read_json(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path.string());
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what(), 0);
    }
}

void write_arms_csv(std::ostream& out, const ExperimentReport& report) {
    std::set<std::string> params, stats;
    for (const auto& a : report.arms) {
        for (const auto& [name, v] : a.params) params.insert(name);
        for (const auto& [name, v] : a.stats) stats.insert(name);
    }
    out << "arm";
    for (const auto& p : params) out << ',' << csv_field(p);
    for (const auto& s : stats) out << ',' << csv_field("mean_" + s) << ',' << csv_field("se_" + s);
    out << '\n';
    for (const auto& a : report.arms) {
        out << csv_field(a.label);
        for (const auto& p : params) {
            out << ',';
            if (auto it = a.params.find(p); it != a.params.end()) out << format_double(it->second);
        }
        for (const auto& s : stats) {
            out << ',';
            if (auto it = a.stats.find(s); it != a.stats.end()) {
                out << format_double(it->second.mean) << ',' << format_double(it->second.se);
            } else {
                out << ',';
            }
        }
        out << '\n';
    }
}

void write_histograms_csv(std::ostream& out, const ExperimentReport& report) {
    out << "arm,field,lower,upper,count\n";
    for (const auto& a : report.arms) {
        for (const auto& [name, h] : a.histograms) {
            const std::string prefix = csv_field(a.label) + ',' + csv_field(name) + ',';
            out << prefix << "," << format_double(h.edge(0)) << ',' << h.underflow << '\n';
            for (std::size_t i = 0; i < h.counts.size(); ++i) {
                out << prefix << format_double(h.edge(i)) << ',' << format_double(h.edge(i + 1)) << ','
                    << h.counts[i] << '\n';
            }
            out << prefix << format_double(h.edge(h.counts.size())) << ",," << h.overflow << '\n';
        }
    }
}

void write_backtest_series_csv(std::ostream& out, const BacktestReport& report) {
    out << "date,criterion,return,selected_dim\n";
    for (std::size_t i = 0; i < report.months.size(); ++i) {
        for (const auto& s : report.series) {
            out << report.months[i].iso() << ',' << to_string(s.strategy) << ',' << format_double(s.returns[i])
                << ',' << s.selected_dim[i] << '\n';
        }
    }
}

void write_backtest_summary_csv(std::ostream& out, const std::vector<BacktestReport>& reports) {
    out << "lookback,criterion,oos_sharpe,mean_selected_dim,degenerate_months,mean_insample_sric_net\n";
    for (const auto& r : reports) {
        for (const auto& s : r.series) {
            out << r.config.lookback_months << ',' << to_string(s.strategy) << ',' << format_double(s.oos_sharpe)
                << ',' << format_double(mean_positive_dim(s)) << ',' << r.degenerate_months.size() << ','
                << format_double(s.mean_insample_sric_net) << '\n';
        }
    }
}

std::size_t CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    throw ParseError("no column named '" + name + "'", 1);
}

CsvTable read_csv_table(std::istream& in) {
    CsvTable table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cells = split_csv_line(line, line_no);
        if (table.header.empty()) {
            table.header = std::move(cells);
            continue;
        }
        if (cells.size() != table.header.size()) {
            throw ParseError("expected " + std::to_string(table.header.size()) + " fields, found " +
                                 std::to_string(cells.size()),
                             line_no);
        }
        table.rows.push_back(std::move(cells));
    }
    if (table.header.empty()) throw ParseError("empty CSV", line_no);
    return table;
}

CsvTable read_csv_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read " + path.string());
    return read_csv_table(in);
}

}  // namespace sric
