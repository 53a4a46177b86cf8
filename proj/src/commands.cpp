#include "sric/commands.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <set>

#include "sric/errors.hpp"
#include "sric/ingest.hpp"
#include "sric/report_io.hpp"

namespace sric {

namespace {

// Typed lookups on a flat JSON object; problems accumulate instead of throwing.
class ConfigReader {
public:
    ConfigReader(const nlohmann::json& j, std::string scope) : json_(j), scope_(std::move(scope)) {
        if (!json_.is_object()) errors_.push_back(scope_ + ": config must be a JSON object");
    }

    template <class T>
    T get(const std::string& key, T fallback) {
        known_.insert(key);
        if (!json_.is_object() || !json_.contains(key)) return fallback;
        const nlohmann::json& v = json_.at(key);
        bool ok;
        if constexpr (std::is_same_v<T, bool>) {
            ok = v.is_boolean();
        } else if constexpr (std::is_integral_v<T>) {
            ok = v.is_number_integer();
        } else if constexpr (std::is_floating_point_v<T>) {
            ok = v.is_number();
        } else {
            ok = v.is_array() && std::all_of(v.begin(), v.end(), [](const auto& x) { return x.is_number(); });
        }
        if (!ok) {
            errors_.push_back(scope_ + "." + key + ": wrong type " + std::string(v.type_name()));
            return fallback;
        }
        return v.get<T>();
    }

    void require(bool condition, const std::string& message) {
        if (!condition) errors_.push_back(scope_ + "." + message);
    }

    // Folds a validator's ConfigError into the collected problems.
    template <class F>
    void validate(F&& check) {
        try {
            check();
        } catch (const ConfigError& e) {
            for (const auto& p : e.problems()) errors_.push_back(scope_ + "." + p);
        }
    }

    // Reports unknown keys and throws if anything went wrong.
    void finish() {
        if (json_.is_object()) {
            for (const auto& [key, value] : json_.items()) {
                if (!known_.count(key)) errors_.push_back(scope_ + "." + key + ": unknown key");
            }
        }
        if (!errors_.empty()) throw ConfigError(errors_);
    }

private:
    const nlohmann::json& json_;
    std::string scope_;
    std::set<std::string> known_;
    std::vector<std::string> errors_;
};

void check_reps(ConfigReader& cfg, std::int64_t reps) { cfg.require(reps >= 1, "reps: must be at least 1"); }

int parse_int(const std::string& text) {
    int value = 0;
    const auto* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, value);
    if (res.ec != std::errc() || res.ptr != end) throw ConfigError({"lookback: '" + text + "' is not an integer"});
    return value;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names{"bias", "select", "frontier", "distribution", "mv"};
    return names;
}

ExperimentReport run_simulation(const std::string& experiment, const nlohmann::json& config,
                                std::uint64_t seed, std::optional<std::int64_t> reps_override, unsigned workers) {
    const RngSpec rng{seed};
    ConfigReader cfg(config, experiment);

    if (experiment == "bias") {
        const double tau = cfg.get("tau_star", 1.0);
        const int k = cfg.get("k", 5);
        const auto grid = cfg.get("T_grid", std::vector<double>{1, 2, 5, 10, 20});
        std::int64_t reps = cfg.get<std::int64_t>("reps", 10000);
        if (reps_override) reps = *reps_override;
        check_reps(cfg, reps);
        cfg.require(tau >= 0.0, "tau_star: must be non-negative");
        cfg.require(k >= 0, "k: must be non-negative");
        cfg.require(!grid.empty(), "T_grid: must not be empty");
        cfg.require(std::all_of(grid.begin(), grid.end(), [](double t) { return t > 0.0; }),
                    "T_grid: horizons must be positive");
        cfg.finish();
        return run_bias_sweep(tau, k, grid, reps, rng, workers);
    }
    if (experiment == "select") {
        SelectionConfig c;
        c.n_assets = cfg.get("n_assets", c.n_assets);
        c.n_true = cfg.get("n_true", c.n_true);
        c.sharpe_low = cfg.get("sharpe_low", c.sharpe_low);
        c.sharpe_high = cfg.get("sharpe_high", c.sharpe_high);
        c.T = cfg.get("T", c.T);
        c.reps = cfg.get("reps", c.reps);
        if (reps_override) c.reps = *reps_override;
        c.redraw_truth = cfg.get("redraw_truth", c.redraw_truth);
        c.k_offset = cfg.get("k_offset", c.k_offset);
        c.gamma = cfg.get("gamma", c.gamma);
        cfg.validate([&] { c.validate(); });
        cfg.finish();
        return run_selection_experiment(c, rng, workers);
    }
    if (experiment == "frontier") {
        FrontierConfig c;
        c.n_assets = cfg.get("n_assets", c.n_assets);
        c.true_sharpe = cfg.get("true_sharpe", c.true_sharpe);
        c.pairwise_corr = cfg.get("pairwise_corr", c.pairwise_corr);
        c.T = cfg.get("T", c.T);
        c.reps = cfg.get("reps", c.reps);
        if (reps_override) c.reps = *reps_override;
        cfg.validate([&] { c.validate(); });
        cfg.finish();
        return run_frontier_experiment(c, rng, workers);
    }
    if (experiment == "distribution" || experiment == "mv") {
        const bool mv = experiment == "mv";
        const double tau = cfg.get("tau_star", mv ? 1.0 : 0.0);
        const int k = cfg.get("k", 5);
        const double T = cfg.get("T", mv ? 10.0 : 1.0);
        const double gamma = mv ? cfg.get("gamma", 1.0) : 1.0;
        std::int64_t reps = cfg.get<std::int64_t>("reps", 100000);
        if (reps_override) reps = *reps_override;
        check_reps(cfg, reps);
        cfg.require(tau >= 0.0, "tau_star: must be non-negative");
        cfg.require(k >= 0, "k: must be non-negative");
        cfg.require(T > 0.0, "T: must be positive");
        cfg.require(gamma > 0.0, "gamma: must be positive");
        cfg.finish();
        const PopulationModel pop = axis_population(tau, k + 1, T);
        return mv ? run_mv_experiment(pop, gamma, reps, rng, workers)
                  : run_distribution_experiment(pop, reps, rng, workers);
    }
    throw ConfigError({"unknown experiment '" + experiment + "'"});
}

void write_experiment_files(const ExperimentReport& report, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    write_json(dir / "report.json", to_json(report));
    std::ofstream arms(dir / "arms.csv", std::ios::binary);
    write_arms_csv(arms, report);
    std::ofstream hist(dir / "histograms.csv", std::ios::binary);
    write_histograms_csv(hist, report);
    if (!arms || !hist) throw Error("failed writing CSV files under " + dir.string());
}

std::vector<int> parse_lookbacks(const std::string& text) {
    std::string range = text;
    if (range.rfind("sweep", 0) == 0) {
        range = range.substr(5);
        while (!range.empty() && (range.front() == ' ' || range.front() == ':' || range.front() == '=')) {
            range.erase(range.begin());
        }
    }
    std::vector<int> out;
    if (const auto colon = range.find(':'); colon != std::string::npos) {
        const int a = parse_int(range.substr(0, colon));
        const int b = parse_int(range.substr(colon + 1));
        if (a < 1 || b < a) throw ConfigError({"lookback: sweep needs 1 <= a <= b, got '" + text + "'"});
        for (int m = a; m <= b; ++m) out.push_back(m);
    } else {
        const int m = parse_int(range);
        if (m < 1) throw ConfigError({"lookback: must be a positive integer"});
        out.push_back(m);
    }
    return out;
}

std::vector<BacktestReport> run_backtest_job(const BacktestJob& job, std::ostream& log) {
    CsvOptions options;
    if (job.format == "french") {
        options = CsvOptions::french_daily();
    } else if (job.format == "generic") {
        options = CsvOptions::generic();
    } else {
        throw ConfigError({"format: expected 'french' or 'generic', got '" + job.format + "'"});
    }
    if (job.periods_per_year > 0) options.periods_per_year = job.periods_per_year;

    ReturnsPanel panel = load_returns_csv(job.data, options);
    if (panel.dropped_rows > 0) {
        log << "warning: dropped " << panel.dropped_rows << " rows with missing values\n";
    }
    if (job.riskfree) {
        RateOptions rate;
        rate.units = options.units;
        rate.annualized = job.riskfree_annualized;
        rate.periods_per_year = options.periods_per_year;
        panel = to_excess(panel, load_riskfree_csv(*job.riskfree, rate));
    } else {
        log << "warning: no risk-free series given; treating returns as excess returns\n";
    }
    auto reports = run_lookback_sweep(panel, job.base, job.lookbacks, job.workers);
    for (const auto& r : reports) {
        if (!r.degenerate_months.empty()) {
            log << "warning: lookback " << r.config.lookback_months << ": " << r.degenerate_months.size()
                << " degenerate windows held no position\n";
        }
    }
    return reports;
}

void write_backtest_files(const std::vector<BacktestReport>& reports, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    for (const auto& r : reports) {
        const std::string stem = "lookback_" + std::to_string(r.config.lookback_months);
        write_json(dir / (stem + ".json"), to_json(r));
        std::ofstream series(dir / (stem + ".csv"), std::ios::binary);
        write_backtest_series_csv(series, r);
        if (!series) throw Error("failed writing " + (dir / (stem + ".csv")).string());
    }
    std::ofstream summary(dir / "summary.csv", std::ios::binary);
    write_backtest_summary_csv(summary, reports);
    if (!summary) throw Error("failed writing summary.csv");
}

}  // namespace sric
