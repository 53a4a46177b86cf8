#include "sric/cli.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sric/commands.hpp"
#include "sric/errors.hpp"
#include "sric/estimators.hpp"
#include "sric/report_io.hpp"
#include "sric/verify.hpp"

namespace sric {

namespace {

nlohmann::json number_or_null(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

nlohmann::json eval_record(double rho, int k, double T, std::optional<double> cost) {
    const double s = sric(rho, k, T);
    const SricSplit split = sric_split(rho, k, T);
    const Interval interval = null_tau_interval(rho, k, T, 0.90);
    nlohmann::json j;
    j["rho"] = rho;
    j["k"] = k;
    j["T"] = T;
    j["sric"] = number_or_null(s);
    j["sric_defined"] = !is_sentinel(s);
    j["split"] = {{"noise_fit", number_or_null(split.noise_fit)},
                  {"estimation_error", number_or_null(split.estimation_error)}};
    j["aic"] = aic(rho, k, T);
    j["aic_normalized"] = aic_normalized(rho, k, T);
    j["siegel_woodgate"] = number_or_null(siegel_woodgate(rho, k, T));
    j["pvalue"] = sharpe_pvalue(rho, k, T);
    j["null_interval_90"] = {{"lower", interval.lower}, {"upper", interval.upper}};
    if (cost) j["sric_net"] = number_or_null(sric_net(rho, k, T, *cost));
    return j;
}

unsigned resolve_workers(int threads) { return threads > 0 ? static_cast<unsigned>(threads) : default_workers(); }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sharpe ratio information criterion: estimators, experiments and backtests", "sric"};
    app.require_subcommand(1);

    // eval
    auto* eval = app.add_subcommand("eval", "Evaluate SRIC and related criteria for one in-sample Sharpe ratio");
    double rho = 0.0, T = 0.0;
    int k = 0;
    std::optional<double> cost;
    eval->add_option("--rho", rho, "In-sample annualized Sharpe ratio")->required();
    eval->add_option("--k", k, "Number of Sharpe-relevant parameters")->required();
    eval->add_option("--T", T, "Sample length in years")->required();
    eval->add_option("--cost", cost, "Per-parameter cost for sric_net");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Run a Monte Carlo experiment");
    std::string experiment, config_path, out_dir;
    std::uint64_t seed = 1;
    std::optional<std::int64_t> reps;
    int threads = 0;
    simulate->add_option("experiment", experiment, "bias | select | frontier | distribution | mv")
        ->required()
        ->check(CLI::IsMember(experiment_names()));
    simulate->add_option("--config", config_path, "JSON config file (flat key-value object)")->check(CLI::ExistingFile);
    simulate->add_option("--seed", seed, "Master seed");
    simulate->add_option("--reps", reps, "Replications (overrides the config)");
    simulate->add_option("--threads", threads, "Worker threads (default: SRIC_THREADS or 1)");
    simulate->add_option("--out", out_dir, "Output directory (default: sric-<experiment>)");

    // backtest
    auto* backtest = app.add_subcommand("backtest", "Rolling out-of-sample backtest on a returns CSV");
    BacktestJob job;
    std::string data_path, riskfree_path, criteria;
    std::vector<std::string> lookback{"12"};
    backtest->add_option("--data", data_path, "Returns CSV")->required()->check(CLI::ExistingFile);
    backtest->add_option("--riskfree", riskfree_path, "Risk-free CSV (date, rate)")->check(CLI::ExistingFile);
    backtest->add_flag("--riskfree-annualized", job.riskfree_annualized, "Risk-free rates are quoted per year");
    backtest->add_option("--lookback", lookback, "Months: m, a:b or sweep a:b")->expected(1, 2);
    backtest->add_option("--out", out_dir, "Output directory (default: sric-backtest)");
    backtest->add_option("--format", job.format, "french | generic")->check(CLI::IsMember({"french", "generic"}));
    backtest->add_option("--periods-per-year", job.periods_per_year, "Override the format's periods per year");
    backtest->add_option("--max-factors", job.base.max_factors, "Largest nested model");
    backtest->add_option("--target-vol", job.base.target_vol, "Annualized in-sample volatility target");
    backtest->add_option("--cost", job.base.cost, "Per-parameter cost for the sric_net column");
    backtest->add_option("--criteria", criteria, "Comma-separated subset of SRIC,AIC,EQUAL_WEIGHT,MARKOWITZ");
    backtest->add_option("--threads", threads, "Worker threads (default: SRIC_THREADS or 1)");

    // verify
    auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
    std::string level = "quick";
    verify->add_option("--level", level, "quick | full")->check(CLI::IsMember({"quick", "full"}));
    verify->add_option("--seed", seed, "Master seed");
    verify->add_option("--threads", threads, "Worker threads (default: SRIC_THREADS or 1)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*eval) {
            out << eval_record(rho, k, T, cost).dump(2) << '\n';
            return kExitOk;
        }
        if (*simulate) {
            nlohmann::json config = nlohmann::json::object();
            if (!config_path.empty()) config = read_json(config_path);
            const ExperimentReport report = run_simulation(experiment, config, seed, reps, resolve_workers(threads));
            const std::filesystem::path dir = out_dir.empty() ? "sric-" + experiment : out_dir;
            write_experiment_files(report, dir);
            nlohmann::json summary{{"experiment", report.experiment},
                                   {"seed", report.master_seed},
                                   {"replications", report.replications},
                                   {"out", dir.string()},
                                   {"files", {"report.json", "arms.csv", "histograms.csv"}},
                                   {"scalars", report.scalars}};
            out << summary.dump(2) << '\n';
            err << "wrote " << (dir / "report.json").string() << " (" << report.arms.size() << " arms)\n";
            return kExitOk;
        }
        if (*backtest) {
            job.data = data_path;
            if (!riskfree_path.empty()) job.riskfree = riskfree_path;
            job.lookbacks = parse_lookbacks(lookback.size() == 2 ? lookback[0] + " " + lookback[1] : lookback[0]);
            job.workers = resolve_workers(threads);
            if (!criteria.empty()) {
                job.base.criteria.clear();
                for (const auto& name : split_csv_line(criteria)) job.base.criteria.push_back(strategy_from_string(name));
            }
            const auto reports = run_backtest_job(job, err);
            const std::filesystem::path dir = out_dir.empty() ? "sric-backtest" : out_dir;
            write_backtest_files(reports, dir);
            nlohmann::json summary = nlohmann::json::array();
            for (const auto& r : reports) {
                for (const auto& s : r.series) {
                    summary.push_back({{"lookback", r.config.lookback_months},
                                       {"criterion", to_string(s.strategy)},
                                       {"oos_sharpe", s.oos_sharpe}});
                }
            }
            out << nlohmann::json{{"out", dir.string()}, {"summary", summary}}.dump(2) << '\n';
            return kExitOk;
        }
        if (*verify) {
            const auto results = run_verification(level == "full" ? VerifyLevel::Full : VerifyLevel::Quick, seed,
                                                  resolve_workers(threads), &err);
            nlohmann::json j = nlohmann::json::array();
            bool all = true;
            for (const auto& r : results) {
                all = all && r.passed;
                j.push_back({{"id", r.id},
                             {"name", r.name},
                             {"passed", r.passed},
                             {"measured", r.measured},
                             {"tolerance", r.tolerance},
                             {"seconds", r.seconds}});
            }
            out << j.dump(2) << '\n';
            err << (all ? "all criteria passed\n" : "some criteria FAILED\n");
            return all ? kExitOk : kExitVerifyFailed;
        }
    } catch (const ConfigError& e) {
        err << "error: invalid configuration\n";
        for (const auto& p : e.problems()) err << "  " << p << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace sric
