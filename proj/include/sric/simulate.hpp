#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sric/core.hpp"
#include "sric/ingest.hpp"
#include "sric/rng.hpp"
#include "sric/stats.hpp"

namespace sric {

/// Run fn(r) for r in [0, count) on up to `workers` threads. Each index is
/// visited exactly once; callers write results by index so the outcome does
/// not depend on the worker count. The first exception thrown is rethrown.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& fn);

/// Worker count from SRIC_THREADS, else 1.
unsigned default_workers();

/// mu + L z / sqrt(T) for a given standard-normal vector z.
SampleEstimate estimate_from_noise(const PopulationModel& pop, const Vector& z);

/// mu_hat ~ N(mu, Sigma / T).
SampleEstimate draw_estimate(const PopulationModel& pop, ReplicationStream& stream);

/// Everything observable and oracle-side about one Monte Carlo draw.
/// Decomposition fields are NaN when the true mean is zero.
struct ReplicationRecord {
    double rho_hat = 0.0;
    double tau_hat = 0.0;
    double sric = 0.0;
    double aic_normalized = 0.0;
    double noise_fit = 0.0;
    double estimation_error = 0.0;
    double noise = 0.0;
    double nu_norm = 0.0;  // |mu_hat - mu|_{Sigma^{-1}}
    double u_hat = 0.0;    // in-sample utility at the in-sample optimum
    double u_oos = 0.0;    // out-of-sample utility at the in-sample optimum
    double n_mv = 0.0;
    double e_mv = 0.0;
    double u_mv = 0.0;
    int selected_dim_sric = -1;
    int selected_dim_aic = -1;
};

/// One draw from `pop` with k = dim - 1 Sharpe-relevant parameters.
ReplicationRecord replicate(const PopulationModel& pop, ReplicationStream& stream, double gamma = 1.0);

struct ArmReport {
    std::string label;
    std::map<std::string, double> params;
    std::map<std::string, Summary> stats;
    std::map<std::string, Histogram> histograms;
};

struct ExperimentReport {
    std::string experiment;
    nlohmann::json config = nlohmann::json::object();
    std::uint64_t master_seed = 0;
    std::int64_t replications = 0;
    std::vector<ArmReport> arms;
    std::map<std::string, double> scalars;
    /// Paired per-replication differences, e.g. "oos_sharpe:SRIC-AIC".
    std::map<std::string, Summary> comparisons;

    const ArmReport& arm(const std::string& label) const;
};

/// Sharpe histograms: width 0.05 on [-2, 3].
inline constexpr double kSharpeBinLower = -2.0;
inline constexpr double kSharpeBinWidth = 0.05;
inline constexpr std::size_t kSharpeBins = 100;

/// Averages of rho_hat, the noise-fit-adjusted rho_hat, SRIC and tau_hat
/// (plus the full decomposition when mu != 0) over `reps` draws.
ExperimentReport run_bias_experiment(const PopulationModel& pop, std::int64_t reps, const RngSpec& rng,
                                     unsigned workers = 1);

/// run_bias_experiment over a grid of horizons with mu = tau_star e_1,
/// Sigma = I_{k+1}; one arm per horizon.
ExperimentReport run_bias_sweep(double tau_star, int k, const std::vector<double>& horizons,
                                std::int64_t reps, const RngSpec& rng, unsigned workers = 1);

struct SelectionConfig {
    int n_assets = 100;
    int n_true = 50;
    double sharpe_low = -0.5;
    double sharpe_high = 0.5;
    double T = 5.0;
    std::int64_t reps = 10000;
    bool redraw_truth = true;
    int k_offset = 0;  // k_i = i - 1 + k_offset
    double gamma = 1.0;

    void validate() const;
};

/// Nested coordinate-prefix models on independent unit-variance assets,
/// chosen by SRIC and AIC, against the equal-weight and full (Markowitz) models.
ExperimentReport run_selection_experiment(const SelectionConfig& config, const RngSpec& rng,
                                          unsigned workers = 1);

struct FrontierConfig {
    int n_assets = 20;
    double true_sharpe = 1.0;
    double pairwise_corr = 0.5;
    double T = 10.0;
    std::int64_t reps = 10000;

    void validate() const;
};

/// Mean rho_hat, SRIC and tau_hat of the best portfolio on the first k assets,
/// k = 1..n; scalar "argmax_k" is the k with the highest mean SRIC.
ExperimentReport run_frontier_experiment(const FrontierConfig& config, const RngSpec& rng,
                                         unsigned workers = 1);

/// Empirical law of rho_hat - tau_hat against the chi(k+1)/sqrt(T) null law
/// (mu = 0) or the positive-regime moments (mu != 0), plus the |nu| bound.
ExperimentReport run_distribution_experiment(const PopulationModel& pop, std::int64_t reps,
                                             const RngSpec& rng, unsigned workers = 1);

/// Empirical means of N_MV and N_MV + E_MV + U_MV against (k+1)/(gamma T)
/// and 2(k+1)/(gamma T).
ExperimentReport run_mv_experiment(const PopulationModel& pop, double gamma, std::int64_t reps,
                                   const RngSpec& rng, unsigned workers = 1);

/// Per-period returns r_t ~ N(mu / ppy, Sigma / ppy) for `months` calendar
/// months of `periods_per_month` rows each, starting January 2000.
ReturnsPanel simulate_panel(const PopulationModel& annual, int months, int periods_per_month,
                            const RngSpec& rng);

/// mu = tau_star e_1 on dim assets with identity covariance.
PopulationModel axis_population(double tau_star, int dim, double T);

}  // namespace sric
