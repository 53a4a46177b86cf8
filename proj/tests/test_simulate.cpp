#include <gtest/gtest.h>

#include <atomic>
#include <cmath>

#include "sric/estimators.hpp"
#include "sric/report_io.hpp"
#include "sric/simulate.hpp"

namespace sric {
namespace {

bool within(const Summary& s, double target, double n_se = 3.0) { return std::abs(s.mean - target) <= n_se * s.se; }

TEST(ParallelFor, VisitsEveryIndexOnceAndPropagatesErrors) {
    for (unsigned workers : {1u, 3u, 8u}) {
        std::vector<std::atomic<int>> hits(1000);
        parallel_for(hits.size(), workers, [&](std::size_t i) { hits[i]++; });
        for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
    }
    EXPECT_THROW(parallel_for(500, 4, [](std::size_t i) {
                     if (i == 321) throw DomainError("boom");
                 }),
                 DomainError);
}

TEST(DrawEstimate, ZeroNoiseReturnsTruth) {
    Vector mu(3);
    mu << 0.1, -0.2, 0.3;
    const PopulationModel pop(mu, CovMatrix::identity(3), 1e6);
    EXPECT_EQ(estimate_from_noise(pop, Vector::Zero(3)).mu_hat, mu);
}

TEST(DrawEstimate, EmpiricalCovarianceMatchesSigmaOverT) {
    Matrix s(2, 2);
    s << 1.0, 0.6, 0.6, 2.0;
    const double T = 4.0;
    const PopulationModel pop(Vector::Zero(2), CovMatrix(s), T);
    const RngSpec rng{5};
    const int n = 100000;
    std::vector<double> xx(n), xy(n), yy(n);
    for (int r = 0; r < n; ++r) {
        ReplicationStream st = rng.stream(static_cast<std::uint64_t>(r));
        const Vector v = draw_estimate(pop, st).mu_hat;
        xx[r] = v[0] * v[0];
        xy[r] = v[0] * v[1];
        yy[r] = v[1] * v[1];
    }
    EXPECT_TRUE(within(summarize(xx), s(0, 0) / T));
    EXPECT_TRUE(within(summarize(xy), s(0, 1) / T));
    EXPECT_TRUE(within(summarize(yy), s(1, 1) / T));
}

TEST(DrawEstimate, SameStreamSameDraw) {
    const PopulationModel pop = axis_population(1.0, 4, 2.0);
    ReplicationStream a = RngSpec{9}.stream(3), b = RngSpec{9}.stream(3);
    EXPECT_EQ(draw_estimate(pop, a).mu_hat, draw_estimate(pop, b).mu_hat);
}

TEST(Replicate, SricFieldMatchesFormula) {
    const PopulationModel pop = axis_population(0.5, 6, 3.0);
    for (std::uint64_t r = 0; r < 100; ++r) {
        ReplicationStream s = RngSpec{1}.stream(r);
        const ReplicationRecord rec = replicate(pop, s);
        EXPECT_NEAR(rec.sric, rec.rho_hat - 5.0 / (3.0 * rec.rho_hat), 1e-12);
        EXPECT_NEAR(rec.rho_hat, rec.tau_hat + rec.noise_fit + rec.estimation_error + rec.noise, 1e-12);
    }
}

TEST(Replicate, NullTruthHasNoDecomposition) {
    ReplicationStream s = RngSpec{1}.stream(0);
    const ReplicationRecord rec = replicate(axis_population(0.0, 3, 1.0), s);
    EXPECT_EQ(rec.tau_hat, 0.0);
    EXPECT_TRUE(std::isnan(rec.noise_fit));
    EXPECT_NEAR(rec.nu_norm, rec.rho_hat, 1e-15);
}

TEST(BiasExperiment, NullTruthExamples) {
    const auto a = run_bias_experiment(axis_population(0.0, 4, 2.0), 10000, RngSpec{2});
    EXPECT_EQ(a.arms.front().stats.at("tau_hat").mean, 0.0);
    const auto b = run_bias_experiment(axis_population(0.0, 1, 1.0), 20000, RngSpec{3});
    EXPECT_TRUE(within(b.arms.front().stats.at("rho_hat"), std::sqrt(2.0 / M_PI)));
}

TEST(BiasExperiment, SricTracksOutOfSampleSharpe) {
    const auto r = run_bias_experiment(axis_population(1.0, 6, 10.0), 10000, RngSpec{4});
    const ArmReport& arm = r.arms.front();
    EXPECT_TRUE(within(arm.stats.at("sric_minus_tau_hat"), 0.0));
    // The raw in-sample Sharpe is biased upward by about k/(T tau*) = 0.5.
    EXPECT_GT(arm.stats.at("rho_hat").mean - arm.stats.at("tau_hat").mean, 0.4);
    EXPECT_THROW(run_bias_experiment(axis_population(1.0, 6, 10.0), 999, RngSpec{4}), ConfigError);
}

TEST(BiasSweep, OneArmPerHorizon) {
    const auto r = run_bias_sweep(1.0, 5, {1.0, 5.0}, 1000, RngSpec{1});
    ASSERT_EQ(r.arms.size(), 2u);
    EXPECT_EQ(r.arms[1].params.at("T"), 5.0);
}

TEST(SelectionExperiment, NoSignalMeansZeroSharpe) {
    SelectionConfig cfg;
    cfg.n_assets = 30;
    cfg.n_true = 0;
    cfg.reps = 4000;
    const auto r = run_selection_experiment(cfg, RngSpec{6});
    for (const auto& arm : r.arms) EXPECT_TRUE(within(arm.stats.at("oos_sharpe"), 0.0)) << arm.label;
}

TEST(SelectionExperiment, SricNeverPicksSmallerModelThanAic) {
    SelectionConfig cfg;
    cfg.reps = 2000;
    const auto r = run_selection_experiment(cfg, RngSpec{7});
    EXPECT_EQ(r.scalars.at("fraction_sric_dim_ge_aic_dim"), 1.0);
    EXPECT_EQ(r.arm("MARKOWITZ").stats.at("selected_dim").mean, 100.0);
    EXPECT_EQ(r.arm("EQUAL_WEIGHT").stats.at("selected_dim").mean, 1.0);
}

TEST(SelectionExperiment, ConfigValidation) {
    SelectionConfig cfg;
    cfg.n_true = 200;
    cfg.T = -1.0;
    try {
        cfg.validate();
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.problems().size(), 2u);
    }
}

TEST(SelectionExperiment, FixedTruthIsSharedAcrossReplications) {
    SelectionConfig cfg;
    cfg.n_assets = 10;
    cfg.n_true = 5;
    cfg.reps = 500;
    cfg.redraw_truth = false;
    const auto a = run_selection_experiment(cfg, RngSpec{8});
    const auto b = run_selection_experiment(cfg, RngSpec{8});
    EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
}

TEST(FrontierExperiment, SingleAssetAndMonotoneInSampleSharpe) {
    FrontierConfig cfg;
    cfg.reps = 2000;
    const auto r = run_frontier_experiment(cfg, RngSpec{9});
    ASSERT_EQ(r.arms.size(), 20u);
    EXPECT_EQ(r.arms[0].stats.at("sric").mean, r.arms[0].stats.at("rho").mean);
    EXPECT_TRUE(within(r.arms[0].stats.at("rho"), 1.0, 4.0));
    for (std::size_t i = 1; i < r.arms.size(); ++i) {
        EXPECT_GE(r.arms[i].stats.at("rho").mean, r.arms[i - 1].stats.at("rho").mean);
    }
    const double k = r.scalars.at("argmax_k");
    EXPECT_GE(k, 3.0);
    EXPECT_LE(k, 5.0);
}

TEST(DistributionExperiment, NullAndPositiveRegimes) {
    const auto null = run_distribution_experiment(axis_population(0.0, 2, 1.0), 20000, RngSpec{10});
    EXPECT_TRUE(within(null.arms.front().stats.at("gap"), std::sqrt(M_PI / 2.0)));
    EXPECT_LT(null.scalars.at("ks_statistic"), 0.015);

    const auto pos = run_distribution_experiment(axis_population(1.0, 6, 100.0), 20000, RngSpec{11});
    EXPECT_EQ(pos.scalars.at("bound_violations"), 0.0);
    EXPECT_TRUE(within(pos.arms.front().stats.at("gap"), 0.05));
    EXPECT_THROW(run_distribution_experiment(axis_population(1.0, 2, 1.0), 9999, RngSpec{1}), ConfigError);
}

TEST(MvExperiment, ExactInExpectationAndScalesWithGamma) {
    const auto a = run_mv_experiment(axis_population(1.0, 6, 1.0), 1.0, 20000, RngSpec{12});
    EXPECT_TRUE(within(a.arms.front().stats.at("n_mv"), 6.0));
    EXPECT_TRUE(within(a.arms.front().stats.at("total_mv"), 12.0));
    const auto b = run_mv_experiment(axis_population(1.0, 6, 10.0), 2.0, 20000, RngSpec{13});
    EXPECT_DOUBLE_EQ(b.scalars.at("theory_n_mv"), 0.3);
    EXPECT_TRUE(within(b.arms.front().stats.at("n_mv"), 0.3));
    EXPECT_TRUE(within(b.arms.front().stats.at("total_mv"), 0.6));
}

TEST(Determinism, ReportsIdenticalAcrossWorkerCounts) {
    SelectionConfig cfg;
    cfg.n_assets = 20;
    cfg.n_true = 10;
    cfg.reps = 3000;
    const std::string one = to_json(run_selection_experiment(cfg, RngSpec{14}, 1)).dump();
    const std::string many = to_json(run_selection_experiment(cfg, RngSpec{14}, 6)).dump();
    EXPECT_EQ(one, many);
    const std::string m1 = to_json(run_mv_experiment(axis_population(1.0, 3, 2.0), 1.0, 10000, RngSpec{15}, 1)).dump();
    const std::string m4 = to_json(run_mv_experiment(axis_population(1.0, 3, 2.0), 1.0, 10000, RngSpec{15}, 4)).dump();
    EXPECT_EQ(m1, m4);
}

TEST(SimulatePanel, ShapeDatesAndMoments) {
    Vector mu(2);
    mu << 1.2, 0.0;
    const PopulationModel pop(mu, CovMatrix::identity(2), 1.0);
    const ReturnsPanel p = simulate_panel(pop, 600, 21, RngSpec{16});
    EXPECT_EQ(p.n_periods(), 600 * 21);
    EXPECT_EQ(p.periods_per_year, 252);
    EXPECT_EQ(p.dates.front(), (Date{2000, 1, 1}));
    EXPECT_EQ(p.dates[21], (Date{2000, 2, 1}));
    EXPECT_NO_THROW(p.validate());
    const SampleEstimate e = sample_moments(p);
    // mean of 50 years: se of annualized mean is 1/sqrt(50).
    EXPECT_NEAR(e.mu_hat[0], 1.2, 3.0 / std::sqrt(50.0));
    EXPECT_NEAR(e.sigma.entries()(1, 1), 1.0, 0.05);
}

}  // namespace
}  // namespace sric
