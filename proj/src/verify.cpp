#include "sric/verify.hpp"

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iterator>
#include <ostream>
#include <random>
#include <sstream>

#include "sric/backtest.hpp"
#include "sric/commands.hpp"
#include "sric/errors.hpp"
#include "sric/estimators.hpp"
#include "sric/ingest.hpp"
#include "sric/mvopt.hpp"
#include "sric/report_io.hpp"
#include "sric/simulate.hpp"

namespace sric {

namespace {

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

// Collects sub-checks of one criterion.
struct Ledger {
    bool ok = true;
    std::vector<std::string> measured;
    std::vector<std::string> failures;

    void check(bool condition, const std::string& what) {
        measured.push_back(what);
        if (!condition) {
            ok = false;
            failures.push_back(what);
        }
    }
};

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::filesystem::path scratch_dir(const std::string& tag, std::uint64_t seed) {
    const auto dir = std::filesystem::temp_directory_path() /
                     ("sric_verify_" + tag + "_" + std::to_string(seed) + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void exact_formulas(Ledger& l) {
    const double tol = 1e-12;
    const double s = sric(1.0, 5, 10.0);
    const SricSplit split = sric_split(1.0, 5, 10.0);
    const double a = aic(1.0, 5, 10.0);
    const double sw = siegel_woodgate(1.0, 5, 10.0);
    l.check(std::abs(s - 0.5) <= tol, "sric=" + num(s));
    l.check(std::abs(split.noise_fit - 0.25) <= tol && std::abs(split.estimation_error - 0.25) <= tol,
            "split=(" + num(split.noise_fit) + "," + num(split.estimation_error) + ")");
    l.check(std::abs(a - 2.0) <= tol, "aic=" + num(a));
    l.check(std::abs(sw - 0.6) <= tol, "siegel_woodgate=" + num(sw));
}

void unbiased_grid(Ledger& l, VerifyLevel level, const RngSpec& rng, unsigned workers) {
    const std::int64_t reps = level == VerifyLevel::Full ? 100000 : 10000;
    int cells = 0, failed = 0;
    double worst = 0.0;
    for (double tau : {0.0, 0.5, 1.0, 3.0}) {
        for (int k : {1, 5, 10, 18}) {
            for (double T : {1.0, 5.0, 10.0}) {
                const PopulationModel pop = axis_population(tau, k + 1, T);
                const auto report = run_bias_experiment(pop, reps, rng.derive(static_cast<std::uint64_t>(cells)), workers);
                const Summary& d = report.arms.front().stats.at("sric_minus_tau_hat");
                const double z = std::abs(d.mean) / d.se;
                worst = std::max(worst, z);
                if (!(z < 3.0)) {
                    ++failed;
                    l.failures.push_back("tau*=" + num(tau) + " k=" + std::to_string(k) + " T=" + num(T) +
                                         " z=" + num(z));
                }
                ++cells;
            }
        }
    }
    l.ok = failed == 0;
    l.measured.push_back(std::to_string(cells - failed) + "/" + std::to_string(cells) +
                         " cells within 3 SE, worst |z|=" + num(worst) + ", reps=" + std::to_string(reps));
}

void split_bias(Ledger& l, const RngSpec& rng, unsigned workers) {
    double residual[2];
    const double horizons[2] = {10.0, 100.0};
    for (int i = 0; i < 2; ++i) {
        const PopulationModel pop = axis_population(1.0, 6, horizons[i]);
        const auto report = run_bias_experiment(pop, 100000, rng.derive(static_cast<std::uint64_t>(i)), workers);
        const double mean_rho = report.arms.front().stats.at("rho_hat").mean;
        residual[i] = mean_rho - (1.0 + 5.0 / (2.0 * horizons[i]));
    }
    l.check(std::abs(residual[1]) < std::abs(residual[0]),
            "|r(T=100)|=" + num(std::abs(residual[1])) + " < |r(T=10)|=" + num(std::abs(residual[0])));
    l.check(std::abs(residual[0]) < 0.02 && std::abs(residual[1]) < 0.02, "both < 0.02");
}

void null_law(Ledger& l, const RngSpec& rng, unsigned workers) {
    std::uint64_t tag = 0;
    for (int k : {0, 1, 5}) {
        const auto report = run_distribution_experiment(axis_population(0.0, k + 1, 1.0), 100000, rng.derive(tag++), workers);
        const Summary& gap = report.arms.front().stats.at("gap");
        const double theory = report.scalars.at("theory_mean_gap");
        const double z = std::abs(gap.mean - theory) / gap.se;
        const double ks = report.scalars.at("ks_statistic");
        l.check(z < 3.0, "k=" + std::to_string(k) + " mean z=" + num(z));
        l.check(ks < 0.01, "k=" + std::to_string(k) + " KS=" + num(ks));
    }
    const auto positive = run_distribution_experiment(axis_population(1.0, 6, 10.0), 100000, rng.derive(tag), workers);
    const double violations = positive.scalars.at("bound_violations");
    l.check(violations == 0.0, "|nu| bound violations=" + num(violations));
}

void mv_means(Ledger& l, const RngSpec& rng, unsigned workers) {
    const auto report = run_mv_experiment(axis_population(1.0, 6, 10.0), 1.0, 100000, rng, workers);
    const ArmReport& arm = report.arms.front();
    const Summary& n = arm.stats.at("n_mv");
    const Summary& total = arm.stats.at("total_mv");
    l.check(std::abs(n.mean - 0.6) < 3.0 * n.se, "mean N_MV=" + num(n.mean) + " (se " + num(n.se) + ")");
    l.check(std::abs(total.mean - 1.2) < 3.0 * total.se,
            "mean total=" + num(total.mean) + " (se " + num(total.se) + ")");
}

void frontier_peak(Ledger& l, const RngSpec& rng, unsigned workers) {
    FrontierConfig cfg;
    cfg.reps = 10000;
    const auto report = run_frontier_experiment(cfg, rng, workers);
    const double k = report.scalars.at("argmax_k");
    l.check(k >= 3.0 && k <= 5.0, "argmax_k=" + num(k));
}

void nested_selection(Ledger& l, const RngSpec& rng, unsigned workers) {
    SelectionConfig cfg;
    cfg.reps = 10000;
    const auto report = run_selection_experiment(cfg, rng, workers);
    const double s = report.arm("SRIC").stats.at("oos_sharpe").mean;
    const double a = report.arm("AIC").stats.at("oos_sharpe").mean;
    l.check(s >= 0.79 && s <= 0.99, "SRIC oos sharpe=" + num(s));
    l.check(a >= 0.26 && a <= 0.46, "AIC oos sharpe=" + num(a));
    const Summary& ds = report.comparisons.at("oos_sharpe:SRIC-AIC");
    l.check(ds.mean > 3.0 * ds.se, "sharpe SRIC-AIC=" + num(ds.mean) + " (se " + num(ds.se) + ")");
    const Summary& du = report.comparisons.at("oos_utility:AIC-SRIC");
    l.check(du.mean > 3.0 * du.se, "utility AIC-SRIC=" + num(du.mean) + " (se " + num(du.se) + ")");
    const double dim_s = report.arm("SRIC").stats.at("selected_dim").mean;
    const double dim_a = report.arm("AIC").stats.at("selected_dim").mean;
    l.check(dim_s >= dim_a, "dim SRIC=" + num(dim_s) + " AIC=" + num(dim_a));
}

void true_factor_sweep(Ledger& l, const RngSpec& rng, unsigned workers) {
    auto run = [&](int k_star) {
        SelectionConfig cfg;
        cfg.n_assets = 100;
        cfg.n_true = k_star;
        cfg.sharpe_low = 0.0;
        cfg.sharpe_high = 0.5;
        cfg.T = 10.0;
        cfg.reps = 500;
        return run_selection_experiment(cfg, rng.derive(static_cast<std::uint64_t>(k_star)), workers);
    };
    auto at_least = [&](const ExperimentReport& r, const std::string& key, const std::string& label) {
        const Summary& d = r.comparisons.at("oos_sharpe:" + key);
        l.check(d.mean >= -3.0 * d.se, label + " diff=" + num(d.mean) + " (se " + num(d.se) + ")");
    };
    const auto mid = run(30);
    at_least(mid, "SRIC-AIC", "k*=30 SRIC>=AIC");
    at_least(mid, "SRIC-MARKOWITZ", "k*=30 SRIC>=MARKOWITZ");
    at_least(mid, "SRIC-EQUAL_WEIGHT", "k*=30 SRIC>=EQUAL_WEIGHT");
    at_least(run(1), "AIC-SRIC", "k*=1 AIC>=SRIC");
    at_least(run(100), "MARKOWITZ-SRIC", "k*=100 MARKOWITZ>=SRIC");
}

// Month boundaries of a panel, as row ranges.
std::vector<std::pair<Eigen::Index, Eigen::Index>> months_of(const ReturnsPanel& p) {
    std::vector<std::pair<Eigen::Index, Eigen::Index>> out;
    for (Eigen::Index i = 0; i < p.n_periods(); ++i) {
        if (out.empty() || p.dates[static_cast<std::size_t>(out.back().first)].month_index() !=
                               p.dates[static_cast<std::size_t>(i)].month_index()) {
            out.emplace_back(i, i + 1);
        } else {
            out.back().second = i + 1;
        }
    }
    return out;
}

void backtest_invariants(Ledger& l, const RngSpec& rng) {
    Matrix corr = Matrix::Constant(5, 5, 0.3);
    corr.diagonal().setOnes();
    Vector mu = Vector::Zero(5);
    mu[0] = 0.8;
    const PopulationModel pop(mu, CovMatrix(corr * 0.04), 1.0);
    const ReturnsPanel panel = simulate_panel(pop, 48, 21, rng.derive(0));
    BacktestConfig cfg;
    cfg.lookback_months = 12;
    cfg.max_factors = 5;
    const BacktestReport base = run_rolling(panel, cfg);

    // Volatility targeting against the asset-space window covariance.
    const auto months = months_of(panel);
    double worst_vol = 0.0;
    for (std::size_t m = 0; m < base.months.size(); ++m) {
        const std::size_t held = m + static_cast<std::size_t>(cfg.lookback_months);
        const Eigen::Index b = months[held - static_cast<std::size_t>(cfg.lookback_months)].first;
        const Eigen::Index e = months[held - 1].second;
        const SampleEstimate window = sample_moments(Matrix(panel.returns.middleRows(b, e - b)), panel.periods_per_year);
        for (const auto& s : base.series) {
            if (s.selected_dim[m] == 0) continue;
            const double vol = std::sqrt(window.sigma.quadratic_form(s.weights[m]));
            worst_vol = std::max(worst_vol, std::abs(vol - cfg.target_vol));
        }
    }
    l.check(worst_vol <= 1e-10, "max |vol - target|=" + num(worst_vol));

    // No look-ahead: replace everything from the start of month `cut` on.
    const std::size_t cut = 30;
    ReturnsPanel shifted = panel;
    const ReturnsPanel noise = simulate_panel(pop, 48, 21, rng.derive(1));
    const Eigen::Index from = months[cut].first;
    shifted.returns.bottomRows(panel.n_periods() - from) = noise.returns.bottomRows(panel.n_periods() - from) * 3.0;
    const BacktestReport moved = run_rolling(shifted, cfg);
    bool same = true;
    const std::size_t decided = cut - static_cast<std::size_t>(cfg.lookback_months);  // months held before the cut
    for (std::size_t s = 0; s < base.series.size(); ++s) {
        for (std::size_t m = 0; m <= decided; ++m) {
            same = same && base.series[s].weights[m] == moved.series[s].weights[m];
            same = same && base.series[s].selected_dim[m] == moved.series[s].selected_dim[m];
        }
        for (std::size_t m = 0; m < decided; ++m) same = same && base.series[s].returns[m] == moved.series[s].returns[m];
    }
    l.check(same, std::string("positions before the altered month unchanged: ") + (same ? "yes" : "no"));

    // Degenerate window: a month of all-zero returns leaves the next month flat.
    ReturnsPanel flat = panel;
    flat.returns.middleRows(months[20].first, months[20].second - months[20].first).setZero();
    BacktestConfig one = cfg;
    one.lookback_months = 1;
    const BacktestReport gap = run_rolling(flat, one);
    bool flat_ok = gap.degenerate_months.size() == 1 && gap.degenerate_months.front() == panel.dates[static_cast<std::size_t>(months[21].first)];
    for (const auto& s : gap.series) {
        flat_ok = flat_ok && s.selected_dim[20] == 0 && s.returns[20] == 0.0 && s.weights[20].isZero(0.0);
    }
    l.check(flat_ok, "degenerate windows=" + std::to_string(gap.degenerate_months.size()) + " flat position held");

    // Stored series reproduce the reported Sharpe.
    bool sharpe_ok = true;
    for (const auto& s : base.series) sharpe_ok = sharpe_ok && annualized_sharpe(s.returns) == s.oos_sharpe;
    l.check(sharpe_ok, "reported Sharpe recomputes exactly");

    // French-format file through the backtest command: one summary row per criterion.
    const auto dir = scratch_dir("bt", rng.master_seed);
    {
        std::ofstream out(dir / "panel.csv");
        out << "Synthetic industry portfolios\nAverage Value Weighted Returns -- Daily\n\n,A,B,C\n";
        const ReturnsPanel three = simulate_panel(axis_population(0.5, 3, 1.0), 20, 21, rng.derive(2));
        for (Eigen::Index i = 0; i < three.n_periods(); ++i) {
            const Date& d = three.dates[static_cast<std::size_t>(i)];
            char date[16];
            std::snprintf(date, sizeof date, "%04d%02d%02d", d.year, d.month, d.day);
            out << date;
            for (Eigen::Index j = 0; j < 3; ++j) out << ',' << num(100.0 * three.returns(i, j));
            out << '\n';
        }
        out << "\nEqual Weighted Returns -- Daily\n,A,B,C\n19000101,1,2,3\n";
    }
    BacktestJob job;
    job.data = dir / "panel.csv";
    job.lookbacks = {12};
    std::ostringstream log;
    write_backtest_files(run_backtest_job(job, log), dir / "out");
    const CsvTable summary = read_csv_table(dir / "out" / "summary.csv");
    l.check(summary.rows.size() == 4, "french-format summary rows=" + std::to_string(summary.rows.size()));
    std::filesystem::remove_all(dir);
}

void gls_oracle(Ledger& l, const RngSpec& rng) {
    double worst = 0.0;
    for (int panel_id = 0; panel_id < 100; ++panel_id) {
        ReplicationStream stream = rng.stream(static_cast<std::uint64_t>(panel_id));
        std::normal_distribution<double> normal;
        std::uniform_int_distribution<int> n_dist(2, 6), p_dist(1, 4), d_dist(20, 60);
        const int n = n_dist(stream), p = std::min(p_dist(stream), n), dates = d_dist(stream);
        const bool per_date = panel_id % 2 == 1;

        auto random_matrix = [&](int rows, int cols) {
            Matrix m(rows, cols);
            for (int i = 0; i < rows; ++i)
                for (int j = 0; j < cols; ++j) m(i, j) = normal(stream);
            return m;
        };
        auto random_cov = [&] {
            const Matrix a = random_matrix(n, n);
            return Matrix(a * a.transpose() + 0.5 * Matrix::Identity(n, n));
        };

        std::vector<Matrix> predictions;
        for (int j = 0; j < p; ++j) predictions.push_back(random_matrix(dates, n));
        const Matrix returns = random_matrix(dates, n) * 0.1;
        std::vector<CovMatrix> covs;
        for (int t = 0; t < (per_date ? dates : 1); ++t) covs.emplace_back(random_cov());
        const double c = 1.0 + panel_id % 7;
        const RegressionPanel panel = make_regression_panel(returns, predictions, covs, c, 12);
        const Vector theta = max_insample_sharpe(regression_to_mv(panel)).theta_hat;

        // Stacked whitened least squares.
        Matrix X(dates * n, p);
        Vector y(dates * n);
        for (int t = 0; t < dates; ++t) {
            Matrix x_t(n, p);
            for (int j = 0; j < p; ++j) x_t.col(j) = predictions[static_cast<std::size_t>(j)].row(t).transpose();
            const Matrix& S = covs[per_date ? static_cast<std::size_t>(t) : 0].entries();
            const Eigen::LLT<Matrix> llt(S);
            X.middleRows(t * n, n) = llt.matrixL().solve(x_t);
            y.segment(t * n, n) = llt.matrixL().solve(Vector(returns.row(t).transpose()));
        }
        const Vector beta = X.householderQr().solve(y);
        const double rel = (theta.normalized() - beta.normalized()).norm();
        worst = std::max(worst, rel);
    }
    l.check(worst < 1e-8, "max direction error=" + num(worst) + " over 100 panels");
}

void worker_determinism(Ledger& l, std::uint64_t seed) {
    const auto dir = scratch_dir("det", seed);
    bool same = true;
    for (const std::string& experiment : {std::string("select"), std::string("frontier"), std::string("bias")}) {
        nlohmann::json cfg = nlohmann::json::object();
        if (experiment == "select") cfg = {{"n_assets", 40}, {"n_true", 20}};
        for (unsigned workers : {1u, 8u}) {
            const auto report = run_simulation(experiment, cfg, seed, 2000, workers);
            write_experiment_files(report, dir / (experiment + std::to_string(workers)));
        }
        for (const char* file : {"report.json", "arms.csv", "histograms.csv"}) {
            const bool eq = slurp(dir / (experiment + "1") / file) == slurp(dir / (experiment + "8") / file);
            if (!eq) l.failures.push_back(experiment + "/" + file + " differs");
            same = same && eq;
        }
    }
    l.check(same, std::string("1 vs 8 workers byte-identical: ") + (same ? "yes" : "no"));
    std::filesystem::remove_all(dir);
}

}  // namespace

std::vector<CheckResult> run_verification(VerifyLevel level, std::uint64_t seed, unsigned workers,
                                          std::ostream* progress) {
    const RngSpec root{seed};
    struct Entry {
        int id;
        const char* name;
        const char* tolerance;
        std::function<void(Ledger&, const RngSpec&)> run;
    };
    const std::vector<Entry> entries{
        {1, "exact-formulas", "abs 1e-12", [](Ledger& l, const RngSpec&) { exact_formulas(l); }},
        {2, "sric-unbiased-grid", "|mean(SRIC - tau_hat)| < 3 SE per cell",
         [&](Ledger& l, const RngSpec& r) { unbiased_grid(l, level, r, workers); }},
        {3, "insample-bias-split", "residual shrinks from T=10 to T=100; both < 0.02",
         [&](Ledger& l, const RngSpec& r) { split_bias(l, r, workers); }},
        {4, "null-gap-law", "mean within 3 SE; KS < 0.01; zero bound violations",
         [&](Ledger& l, const RngSpec& r) { null_law(l, r, workers); }},
        {5, "mv-decomposition-means", "within 3 SE of 0.6 and 1.2",
         [&](Ledger& l, const RngSpec& r) { mv_means(l, r, workers); }},
        {6, "frontier-peak", "argmax_k in {3,4,5}", [&](Ledger& l, const RngSpec& r) { frontier_peak(l, r, workers); }},
        {7, "nested-selection", "SRIC in [0.79,0.99], AIC in [0.26,0.46]; paired gaps > 3 SE; dim SRIC >= AIC",
         [&](Ledger& l, const RngSpec& r) { nested_selection(l, r, workers); }},
        {8, "selection-vs-true-factors", "paired difference >= -3 SE",
         [&](Ledger& l, const RngSpec& r) { true_factor_sweep(l, r, workers); }},
        {9, "rolling-backtest-invariants", "vol 1e-10; exact equality elsewhere",
         [](Ledger& l, const RngSpec& r) { backtest_invariants(l, r); }},
        {10, "gls-oracle", "direction error < 1e-8", [](Ledger& l, const RngSpec& r) { gls_oracle(l, r); }},
        {11, "worker-determinism", "byte-identical files",
         [&](Ledger& l, const RngSpec&) { worker_determinism(l, seed); }},
    };

    std::vector<CheckResult> results;
    for (const auto& e : entries) {
        const auto start = std::chrono::steady_clock::now();
        Ledger ledger;
        try {
            e.run(ledger, root.derive(static_cast<std::uint64_t>(e.id)));
        } catch (const std::exception& ex) {
            ledger.ok = false;
            ledger.failures.push_back(std::string("exception: ") + ex.what());
        }
        CheckResult r;
        r.id = e.id;
        r.name = e.name;
        r.passed = ledger.ok;
        r.measured = join(ledger.measured, "; ");
        if (!ledger.failures.empty()) r.measured += (r.measured.empty() ? "" : "; ") + std::string("FAILED: ") + join(ledger.failures, "; ");
        r.tolerance = e.tolerance;
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (progress) *progress << format_check(r) << '\n' << std::flush;
        results.push_back(std::move(r));
    }
    return results;
}

std::string format_check(const CheckResult& r) {
    char head[96];
    std::snprintf(head, sizeof head, "%s %2d %-28s", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str());
    return std::string(head) + " measured: " + r.measured + " | tolerance: " + r.tolerance + " | " +
           num(r.seconds) + "s";
}

}  // namespace sric
