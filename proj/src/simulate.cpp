#include "sric/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <random>
#include <thread>

#include "sric/estimators.hpp"
#include "sric/mvopt.hpp"
#include "sric/select.hpp"

namespace sric {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::size_t kChunk = 64;

void require_reps(std::int64_t reps, std::int64_t minimum, const char* experiment) {
    if (reps < minimum) {
        throw ConfigError({std::string(experiment) + ": reps must be at least " + std::to_string(minimum) +
                           " (got " + std::to_string(reps) + ")"});
    }
}

Vector standard_normals(Eigen::Index n, ReplicationStream& stream) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector z(n);
    for (Eigen::Index i = 0; i < n; ++i) z[i] = normal(stream);
    return z;
}

template <class Record, class Field>
std::vector<double> column(const std::vector<Record>& records, Field field) {
    std::vector<double> out;
    out.reserve(records.size());
    for (const auto& r : records) out.push_back(static_cast<double>(std::invoke(field, r)));
    return out;
}

std::vector<double> difference(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

Histogram sharpe_histogram(const std::vector<double>& values) {
    return make_histogram(values, kSharpeBinLower, kSharpeBinWidth, kSharpeBins);
}

Histogram dimension_histogram(const std::vector<double>& values, int max_dim) {
    return make_histogram(values, 0.5, 1.0, static_cast<std::size_t>(max_dim));
}

nlohmann::json population_echo(const PopulationModel& pop) {
    nlohmann::json j;
    j["dim"] = pop.dim();
    j["k"] = pop.dim() - 1;
    j["T"] = pop.horizon_years;
    j["tau_star"] = mahalanobis_norm(pop.mu, pop.sigma);
    j["mu"] = std::vector<double>(pop.mu.data(), pop.mu.data() + pop.mu.size());
    return j;
}

std::vector<ReplicationRecord> replicate_all(const PopulationModel& pop, std::int64_t reps,
                                             const RngSpec& rng, unsigned workers, double gamma) {
    std::vector<ReplicationRecord> records(static_cast<std::size_t>(reps));
    parallel_for(records.size(), workers, [&](std::size_t r) {
        ReplicationStream stream = rng.stream(r);
        records[r] = replicate(pop, stream, gamma);
    });
    return records;
}

ArmReport bias_arm(const PopulationModel& pop, const std::vector<ReplicationRecord>& records) {
    const int k = static_cast<int>(pop.dim()) - 1;
    const double T = pop.horizon_years;
    ArmReport arm;
    arm.params["T"] = T;
    arm.params["k"] = k;
    arm.params["tau_star"] = mahalanobis_norm(pop.mu, pop.sigma);

    const auto rho = column(records, &ReplicationRecord::rho_hat);
    const auto tau = column(records, &ReplicationRecord::tau_hat);
    const auto s = column(records, &ReplicationRecord::sric);
    std::vector<double> half(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        half[i] = rho[i] - sric_split(rho[i], k, T).noise_fit;
    }

    arm.stats["rho_hat"] = summarize(rho);
    arm.stats["rho_hat_minus_noise_fit"] = summarize(half);
    arm.stats["sric"] = summarize(s);
    arm.stats["tau_hat"] = summarize(tau);
    arm.stats["sric_minus_tau_hat"] = summarize(difference(s, tau));
    arm.stats["aic_normalized"] = summarize(column(records, &ReplicationRecord::aic_normalized));
    arm.stats["u_hat"] = summarize(column(records, &ReplicationRecord::u_hat));
    arm.stats["u_oos"] = summarize(column(records, &ReplicationRecord::u_oos));
    arm.stats["n_mv"] = summarize(column(records, &ReplicationRecord::n_mv));
    arm.stats["e_mv"] = summarize(column(records, &ReplicationRecord::e_mv));
    arm.stats["u_mv"] = summarize(column(records, &ReplicationRecord::u_mv));
    if (!pop.mu.isZero(0.0)) {
        arm.stats["noise_fit"] = summarize(column(records, &ReplicationRecord::noise_fit));
        arm.stats["estimation_error"] = summarize(column(records, &ReplicationRecord::estimation_error));
        arm.stats["noise"] = summarize(column(records, &ReplicationRecord::noise));
    }
    arm.histograms["rho_hat"] = sharpe_histogram(rho);
    arm.histograms["tau_hat"] = sharpe_histogram(tau);
    arm.histograms["sric"] = sharpe_histogram(s);
    return arm;
}

}  // namespace

void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& fn) {
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const std::size_t chunk = std::clamp<std::size_t>(count / (8 * std::size_t{workers}), 1, kChunk);
    const std::size_t n_threads = std::min<std::size_t>(workers, (count + chunk - 1) / chunk);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto work = [&] {
        while (!failed.load(std::memory_order_relaxed)) {
            const std::size_t begin = next.fetch_add(chunk);
            if (begin >= count) return;
            const std::size_t end = std::min(count, begin + chunk);
            try {
                for (std::size_t i = begin; i < end; ++i) fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                failed = true;
                return;
            }
        }
    };

    std::vector<std::jthread> pool;
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(work);
    pool.clear();  // joins
    if (error) std::rethrow_exception(error);
}

unsigned default_workers() {
    if (const char* env = std::getenv("SRIC_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return static_cast<unsigned>(n);
    }
    return 1;
}

SampleEstimate estimate_from_noise(const PopulationModel& pop, const Vector& z) {
    Vector mu_hat = pop.mu + pop.sigma.color(z) / std::sqrt(pop.horizon_years);
    return SampleEstimate(std::move(mu_hat), pop.sigma, pop.horizon_years);
}

SampleEstimate draw_estimate(const PopulationModel& pop, ReplicationStream& stream) {
    return estimate_from_noise(pop, standard_normals(pop.dim(), stream));
}

ReplicationRecord replicate(const PopulationModel& pop, ReplicationStream& stream, double gamma) {
    const SampleEstimate est = draw_estimate(pop, stream);
    const int k = static_cast<int>(pop.dim()) - 1;
    const double T = pop.horizon_years;

    ReplicationRecord rec;
    if (pop.mu.isZero(0.0)) {
        rec.rho_hat = max_insample_sharpe(est).rho_hat;
        rec.tau_hat = 0.0;
        rec.noise_fit = rec.estimation_error = rec.noise = kNaN;
    } else {
        const SharpeDecomposition d = decompose(pop, est);
        rec.rho_hat = d.rho_hat;
        rec.tau_hat = d.tau_hat;
        rec.noise_fit = d.noise_fit;
        rec.estimation_error = d.estimation_error;
        rec.noise = d.noise;
    }
    rec.sric = sric(rec.rho_hat, k, T);
    rec.aic_normalized = aic_normalized(rec.rho_hat, k, T);
    rec.nu_norm = mahalanobis_norm(est.mu_hat - pop.mu, pop.sigma);

    const MVDecomposition mv = decompose_mv(pop, est, gamma);
    rec.u_hat = mv.u_hat_at_theta_hat;
    rec.u_oos = mv.u_at_theta_hat;
    rec.n_mv = mv.noise_fit_mv;
    rec.e_mv = mv.estimation_error_mv;
    rec.u_mv = mv.noise_mv;
    return rec;
}

const ArmReport& ExperimentReport::arm(const std::string& label) const {
    for (const auto& a : arms) {
        if (a.label == label) return a;
    }
    throw std::out_of_range("no arm labelled " + label);
}

PopulationModel axis_population(double tau_star, int dim, double T) {
    if (dim < 1) throw DimensionError("population needs at least one asset");
    Vector mu = Vector::Zero(dim);
    mu[0] = tau_star;
    return PopulationModel(std::move(mu), CovMatrix::identity(dim), T);
}

ExperimentReport run_bias_experiment(const PopulationModel& pop, std::int64_t reps, const RngSpec& rng,
                                     unsigned workers) {
    require_reps(reps, 1000, "bias");
    const auto records = replicate_all(pop, reps, rng, workers, 1.0);

    ExperimentReport report;
    report.experiment = "bias";
    report.config = population_echo(pop);
    report.master_seed = rng.master_seed;
    report.replications = reps;
    ArmReport arm = bias_arm(pop, records);
    arm.label = "T=" + nlohmann::json(pop.horizon_years).dump();
    report.arms.push_back(std::move(arm));
    return report;
}

ExperimentReport run_bias_sweep(double tau_star, int k, const std::vector<double>& horizons,
                                std::int64_t reps, const RngSpec& rng, unsigned workers) {
    if (horizons.empty()) throw ConfigError({"bias: T grid is empty"});
    ExperimentReport report;
    report.experiment = "bias";
    report.config = {{"tau_star", tau_star}, {"k", k}, {"T_grid", horizons}, {"reps", reps}};
    report.master_seed = rng.master_seed;
    report.replications = reps;
    for (std::size_t i = 0; i < horizons.size(); ++i) {
        const PopulationModel pop = axis_population(tau_star, k + 1, horizons[i]);
        ExperimentReport one = run_bias_experiment(pop, reps, rng.derive(i), workers);
        report.arms.push_back(std::move(one.arms.front()));
    }
    return report;
}

void SelectionConfig::validate() const {
    std::vector<std::string> errors;
    if (n_assets < 1) errors.push_back("n_assets must be at least 1");
    if (n_true < 0 || n_true > n_assets) errors.push_back("n_true must lie in [0, n_assets]");
    if (!(sharpe_low <= sharpe_high)) errors.push_back("sharpe_low must not exceed sharpe_high");
    if (!(T > 0.0)) errors.push_back("T must be positive");
    if (reps < 1) errors.push_back("reps must be at least 1");
    if (k_offset != 0 && k_offset != 1) errors.push_back("k_offset must be 0 or 1");
    if (!(gamma > 0.0)) errors.push_back("gamma must be positive");
    if (!errors.empty()) throw ConfigError(std::move(errors));
}

ExperimentReport run_selection_experiment(const SelectionConfig& cfg, const RngSpec& rng, unsigned workers) {
    cfg.validate();
    const int n = cfg.n_assets;
    const CovMatrix identity = CovMatrix::identity(n);
    const Matrix ones = Matrix::Ones(n, 1);

    auto draw_truth = [&](ReplicationStream& stream) {
        std::uniform_real_distribution<double> law(cfg.sharpe_low, cfg.sharpe_high);
        Vector mu = Vector::Zero(n);
        for (int i = 0; i < cfg.n_true; ++i) mu[i] = law(stream);
        return mu;
    };
    Vector fixed_truth;
    if (!cfg.redraw_truth) {
        ReplicationStream truth_stream = rng.derive(0x7275746855ULL).stream(0);
        fixed_truth = draw_truth(truth_stream);
    }

    std::vector<int> ks(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) ks[static_cast<std::size_t>(i)] = i + cfg.k_offset;

    enum Arm { kSric, kAic, kEqual, kMarkowitz, kArms };
    struct Draw {
        double oos_sharpe[kArms];
        double oos_utility[kArms];
        double insample_sharpe[kArms];
        double dim[kArms];
    };
    std::vector<Draw> draws(static_cast<std::size_t>(cfg.reps));

    parallel_for(draws.size(), workers, [&](std::size_t r) {
        ReplicationStream stream = rng.stream(r);
        const Vector mu = cfg.redraw_truth ? draw_truth(stream) : fixed_truth;
        const PopulationModel pop(mu, identity, cfg.T);
        const SampleEstimate est = draw_estimate(pop, stream);
        const PrefixPath path = prefix_path(est, mu);

        const std::span<const double> rho(path.rho_hat.data(), static_cast<std::size_t>(n));
        const std::size_t by_sric = select_values(rho, ks, Criterion::SRIC, cfg.T).chosen_index;
        const std::size_t by_aic = select_values(rho, ks, Criterion::AIC, cfg.T).chosen_index;

        Draw& d = draws[r];
        auto record_prefix = [&](Arm a, std::size_t i) {
            const double rho_i = path.rho_hat[static_cast<Eigen::Index>(i)];
            const double cross = path.cross[static_cast<Eigen::Index>(i)];
            d.oos_sharpe[a] = path.tau_hat[static_cast<Eigen::Index>(i)];
            d.oos_utility[a] = (2.0 * cross - rho_i * rho_i) / cfg.gamma;
            d.insample_sharpe[a] = rho_i;
            d.dim[a] = static_cast<double>(i + 1);
        };
        record_prefix(kSric, by_sric);
        record_prefix(kAic, by_aic);
        record_prefix(kMarkowitz, static_cast<std::size_t>(n - 1));

        const SharpeMaximizer ew = max_insample_sharpe_subspace(est, ones);
        const double ew_var = identity.quadratic_form(ew.theta_hat);
        d.oos_sharpe[kEqual] = sharpe_of(ew.theta_hat, mu, identity);
        d.oos_utility[kEqual] = (2.0 * mu.dot(ew.theta_hat) - ew_var) / cfg.gamma;
        d.insample_sharpe[kEqual] = ew.rho_hat;
        d.dim[kEqual] = 1.0;
    });

    ExperimentReport report;
    report.experiment = "select";
    report.config = {{"n_assets", cfg.n_assets},     {"n_true", cfg.n_true},
                     {"sharpe_low", cfg.sharpe_low}, {"sharpe_high", cfg.sharpe_high},
                     {"T", cfg.T},                   {"reps", cfg.reps},
                     {"redraw_truth", cfg.redraw_truth}, {"k_offset", cfg.k_offset},
                     {"gamma", cfg.gamma}};
    report.master_seed = rng.master_seed;
    report.replications = cfg.reps;

    const char* labels[kArms] = {"SRIC", "AIC", "EQUAL_WEIGHT", "MARKOWITZ"};
    std::vector<double> sharpe[kArms], utility[kArms], dims[kArms];
    for (int a = 0; a < kArms; ++a) {
        sharpe[a] = column(draws, [a](const Draw& d) { return d.oos_sharpe[a]; });
        utility[a] = column(draws, [a](const Draw& d) { return d.oos_utility[a]; });
        dims[a] = column(draws, [a](const Draw& d) { return d.dim[a]; });
        ArmReport arm;
        arm.label = labels[a];
        arm.params["n_true"] = cfg.n_true;
        arm.stats["oos_sharpe"] = summarize(sharpe[a]);
        arm.stats["oos_utility"] = summarize(utility[a]);
        arm.stats["insample_sharpe"] =
            summarize(column(draws, [a](const Draw& d) { return d.insample_sharpe[a]; }));
        arm.stats["selected_dim"] = summarize(dims[a]);
        arm.histograms["oos_sharpe"] = sharpe_histogram(sharpe[a]);
        arm.histograms["oos_utility"] = make_histogram(utility[a], -20.0, 0.25, 100);
        arm.histograms["selected_dim"] = dimension_histogram(dims[a], n);
        report.arms.push_back(std::move(arm));
    }

    auto compare = [&](const std::string& field, const std::vector<double>* values, int a, int b) {
        report.comparisons[field + ":" + labels[a] + "-" + labels[b]] = summarize(difference(values[a], values[b]));
    };
    compare("oos_sharpe", sharpe, kSric, kAic);
    compare("oos_sharpe", sharpe, kSric, kEqual);
    compare("oos_sharpe", sharpe, kSric, kMarkowitz);
    compare("oos_sharpe", sharpe, kAic, kSric);
    compare("oos_sharpe", sharpe, kMarkowitz, kSric);
    compare("oos_sharpe", sharpe, kEqual, kSric);
    compare("oos_utility", utility, kAic, kSric);
    compare("selected_dim", dims, kSric, kAic);

    std::int64_t dominated = 0;
    for (const auto& d : draws) dominated += d.dim[kSric] >= d.dim[kAic] ? 1 : 0;
    report.scalars["fraction_sric_dim_ge_aic_dim"] =
        static_cast<double>(dominated) / static_cast<double>(draws.size());
    return report;
}

void FrontierConfig::validate() const {
    std::vector<std::string> errors;
    if (n_assets < 1) errors.push_back("n_assets must be at least 1");
    if (!(T > 0.0)) errors.push_back("T must be positive");
    if (reps < 1) errors.push_back("reps must be at least 1");
    if (n_assets > 1 && !(pairwise_corr > -1.0 / (n_assets - 1) && pairwise_corr < 1.0)) {
        errors.push_back("pairwise_corr must lie in (-1/(n-1), 1) for a positive definite correlation matrix");
    }
    if (!errors.empty()) throw ConfigError(std::move(errors));
}

ExperimentReport run_frontier_experiment(const FrontierConfig& cfg, const RngSpec& rng, unsigned workers) {
    cfg.validate();
    const int n = cfg.n_assets;
    Matrix corr = Matrix::Constant(n, n, cfg.pairwise_corr);
    corr.diagonal().setOnes();
    const PopulationModel pop(Vector::Constant(n, cfg.true_sharpe), CovMatrix(corr), cfg.T);

    std::vector<PrefixPath> paths(static_cast<std::size_t>(cfg.reps));
    parallel_for(paths.size(), workers, [&](std::size_t r) {
        ReplicationStream stream = rng.stream(r);
        const SampleEstimate est = draw_estimate(pop, stream);
        paths[r] = prefix_path(est, pop.mu);
    });

    ExperimentReport report;
    report.experiment = "frontier";
    report.config = {{"n_assets", cfg.n_assets},
                     {"true_sharpe", cfg.true_sharpe},
                     {"pairwise_corr", cfg.pairwise_corr},
                     {"T", cfg.T},
                     {"reps", cfg.reps}};
    report.master_seed = rng.master_seed;
    report.replications = cfg.reps;

    int best_k = 1;
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        std::vector<double> rho, s, tau;
        rho.reserve(paths.size());
        s.reserve(paths.size());
        tau.reserve(paths.size());
        for (const auto& p : paths) {
            rho.push_back(p.rho_hat[i]);
            s.push_back(sric(p.rho_hat[i], i, cfg.T));
            tau.push_back(p.tau_hat[i]);
        }
        ArmReport arm;
        arm.label = "k=" + std::to_string(i + 1);
        arm.params["k"] = i + 1;
        arm.stats["rho"] = summarize(rho);
        arm.stats["sric"] = summarize(s);
        arm.stats["tau_hat"] = summarize(tau);
        if (arm.stats["sric"].mean > best) {
            best = arm.stats["sric"].mean;
            best_k = i + 1;
        }
        report.arms.push_back(std::move(arm));
    }
    report.scalars["argmax_k"] = best_k;
    report.scalars["max_mean_sric"] = best;
    return report;
}

ExperimentReport run_distribution_experiment(const PopulationModel& pop, std::int64_t reps,
                                             const RngSpec& rng, unsigned workers) {
    require_reps(reps, 10000, "distribution");
    const auto records = replicate_all(pop, reps, rng, workers, 1.0);
    const int k = static_cast<int>(pop.dim()) - 1;
    const double T = pop.horizon_years;
    const bool null_regime = pop.mu.isZero(0.0);

    std::vector<double> gap(records.size());
    std::int64_t violations = 0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        gap[i] = records[i].rho_hat - records[i].tau_hat;
        if (gap[i] > records[i].nu_norm + 1e-12) ++violations;
    }

    ExperimentReport report;
    report.experiment = "distribution";
    report.config = population_echo(pop);
    report.config["reps"] = reps;
    report.master_seed = rng.master_seed;
    report.replications = reps;

    ArmReport arm;
    arm.label = null_regime ? "tau_star=0" : "tau_star>0";
    arm.params["k"] = k;
    arm.params["T"] = T;
    arm.stats["gap"] = summarize(gap);
    arm.stats["nu_norm"] = summarize(column(records, &ReplicationRecord::nu_norm));
    arm.stats["rho_hat"] = summarize(column(records, &ReplicationRecord::rho_hat));
    arm.stats["tau_hat"] = summarize(column(records, &ReplicationRecord::tau_hat));
    arm.histograms["gap"] = sharpe_histogram(gap);

    const UncertaintyMoments theory =
        null_regime ? gap_moments_null(k, T) : gap_moments_positive(mahalanobis_norm(pop.mu, pop.sigma), k, T);
    report.scalars["null_regime"] = null_regime ? 1.0 : 0.0;
    report.scalars["theory_mean_gap"] = theory.mean_gap;
    report.scalars["theory_var_gap"] = theory.var_gap;
    report.scalars["empirical_mean_gap"] = arm.stats["gap"].mean;
    report.scalars["empirical_var_gap"] = arm.stats["gap"].variance;
    report.scalars["bound_violations"] = static_cast<double>(violations);
    if (null_regime) {
        const NullGapDistribution law(k, T);
        report.scalars["ks_statistic"] = ks_statistic(gap, [&](double x) { return law.cdf(x); });
    }
    report.arms.push_back(std::move(arm));
    return report;
}

ExperimentReport run_mv_experiment(const PopulationModel& pop, double gamma, std::int64_t reps,
                                   const RngSpec& rng, unsigned workers) {
    require_reps(reps, 10000, "mv");
    if (!(gamma > 0.0)) throw ConfigError({"mv: gamma must be positive"});
    const auto records = replicate_all(pop, reps, rng, workers, gamma);
    const int k = static_cast<int>(pop.dim()) - 1;
    const double T = pop.horizon_years;

    std::vector<double> total(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        total[i] = records[i].n_mv + records[i].e_mv + records[i].u_mv;
    }

    ExperimentReport report;
    report.experiment = "mv";
    report.config = population_echo(pop);
    report.config["gamma"] = gamma;
    report.config["reps"] = reps;
    report.master_seed = rng.master_seed;
    report.replications = reps;

    ArmReport arm;
    arm.label = "gamma=" + nlohmann::json(gamma).dump();
    arm.params["gamma"] = gamma;
    arm.params["k"] = k;
    arm.params["T"] = T;
    arm.stats["n_mv"] = summarize(column(records, &ReplicationRecord::n_mv));
    arm.stats["e_mv"] = summarize(column(records, &ReplicationRecord::e_mv));
    arm.stats["u_mv"] = summarize(column(records, &ReplicationRecord::u_mv));
    arm.stats["total_mv"] = summarize(total);
    arm.stats["u_hat"] = summarize(column(records, &ReplicationRecord::u_hat));
    arm.stats["u_oos"] = summarize(column(records, &ReplicationRecord::u_oos));
    report.arms.push_back(std::move(arm));

    report.scalars["theory_n_mv"] = (k + 1) / (gamma * T);
    report.scalars["theory_total_mv"] = 2.0 * (k + 1) / (gamma * T);
    return report;
}

ReturnsPanel simulate_panel(const PopulationModel& annual, int months, int periods_per_month, const RngSpec& rng) {
    if (months < 1 || periods_per_month < 1) throw DomainError("panel needs at least one month and one period");
    const int ppy = 12 * periods_per_month;
    const Eigen::Index n = annual.dim();
    const double scale = 1.0 / std::sqrt(static_cast<double>(ppy));

    ReturnsPanel panel;
    panel.periods_per_year = ppy;
    for (Eigen::Index j = 0; j < n; ++j) panel.asset_labels.push_back("asset_" + std::to_string(j + 1));
    panel.returns.resize(static_cast<Eigen::Index>(months) * periods_per_month, n);
    Eigen::Index row = 0;
    for (int m = 0; m < months; ++m) {
        for (int d = 0; d < periods_per_month; ++d, ++row) {
            ReplicationStream stream = rng.stream(static_cast<std::uint64_t>(row));
            const Vector z = standard_normals(n, stream);
            panel.returns.row(row) = (annual.mu / ppy + annual.sigma.color(z) * scale).transpose();
            panel.dates.push_back(Date{2000 + m / 12, m % 12 + 1, 1 + d});
        }
    }
    return panel;
}

}  // namespace sric
