#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sric/estimators.hpp"
#include "sric/mvopt.hpp"
#include "sric/select.hpp"

namespace sric {
namespace {

ModelCandidate cand(double rho, int k) {
    ModelCandidate c;
    c.label = "m" + std::to_string(k);
    c.rho_hat = rho;
    c.k = k;
    c.basis_dim = k + 1;
    return c;
}

TEST(Select, BothCriteriaPreferSmallModel) {
    const std::vector<ModelCandidate> c{cand(0.8, 0), cand(1.0, 5)};
    const SelectionResult s = select(c, Criterion::SRIC, 10.0);
    EXPECT_EQ(s.chosen_index, 0u);
    EXPECT_NEAR(s.criterion_values[0], 0.8, 1e-12);
    EXPECT_NEAR(s.criterion_values[1], 0.5, 1e-12);
    const SelectionResult a = select(c, Criterion::AIC, 10.0);
    EXPECT_EQ(a.chosen_index, 0u);
    EXPECT_NEAR(a.criterion_values[0], -4.4, 1e-12);
    EXPECT_NEAR(a.criterion_values[1], 2.0, 1e-12);
}

TEST(Select, CriteriaDisagreeAndSricPicksLargerModel) {
    const std::vector<ModelCandidate> c{cand(0.4, 0), cand(0.7, 2)};
    const SelectionResult s = select(c, Criterion::SRIC, 10.0);
    EXPECT_EQ(s.chosen_index, 1u);
    EXPECT_NEAR(s.criterion_values[1], 0.7 - 2.0 / 7.0, 1e-12);
    EXPECT_NEAR(s.criterion_values[1], 0.4143, 1e-4);
    const SelectionResult a = select(c, Criterion::AIC, 10.0);
    EXPECT_EQ(a.chosen_index, 0u);
    EXPECT_NEAR(a.criterion_values[0], 0.4, 1e-12);
    EXPECT_NEAR(a.criterion_values[1], 1.1, 1e-12);
}

TEST(Select, TiesGoToSmallerKThenSmallerIndex) {
    const std::vector<ModelCandidate> dup{cand(1.0, 3), cand(1.0, 3)};
    const SelectionResult s = select(dup, Criterion::SRIC, 5.0);
    EXPECT_EQ(s.chosen_index, 0u);
    EXPECT_TRUE(s.tie_broken);

    // Equal SRIC values at different k: rho - k/(T rho) with T = 1:
    // (2, 0) -> 2 and (rho, 2) with rho - 2/rho = 2 -> rho = 1 + sqrt(3).
    const std::vector<ModelCandidate> mixed{cand(1.0 + std::sqrt(3.0), 2), cand(2.0, 0)};
    const SelectionResult m = select(mixed, Criterion::SRIC, 1.0);
    EXPECT_EQ(m.chosen_index, 1u);
}

TEST(Select, EmptyFamilyAndUnsupportedCriterion) {
    EXPECT_THROW(select({}, Criterion::SRIC, 1.0), EmptyFamilyError);
    EXPECT_THROW(select({cand(1.0, 0)}, Criterion::SIEGEL_WOODGATE, 1.0), DomainError);
}

TEST(Select, SentinelNeverChosenOverFiniteValue) {
    const std::vector<ModelCandidate> c{cand(0.0, 4), cand(0.0, 1), cand(0.01, 3)};
    const SelectionResult s = select(c, Criterion::SRIC, 1.0);
    EXPECT_EQ(s.chosen_index, 2u);
    EXPECT_TRUE(is_sentinel(s.criterion_values[0]));
}

TEST(Select, ChosenValueIsExtremal) {
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> u(0.01, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<ModelCandidate> c;
        for (int i = 0; i < 8; ++i) c.push_back(cand(u(gen), i));
        const SelectionResult s = select(c, Criterion::SRIC, 2.0);
        const SelectionResult a = select(c, Criterion::AIC, 2.0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            EXPECT_GE(s.criterion_values[s.chosen_index], s.criterion_values[i]);
            EXPECT_LE(a.criterion_values[a.chosen_index], a.criterion_values[i]);
        }
    }
}

TEST(Select, InvariantUnderRelabeling) {
    std::mt19937_64 gen(2);
    std::uniform_real_distribution<double> u(0.01, 3.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<ModelCandidate> c;
        for (int i = 0; i < 6; ++i) c.push_back(cand(u(gen), i));
        std::vector<ModelCandidate> shuffled = c;
        std::shuffle(shuffled.begin(), shuffled.end(), gen);
        for (Criterion crit : {Criterion::SRIC, Criterion::AIC}) {
            const auto& a = c[select(c, crit, 3.0).chosen_index];
            const auto& b = shuffled[select(shuffled, crit, 3.0).chosen_index];
            EXPECT_EQ(a.k, b.k);
            EXPECT_EQ(a.rho_hat, b.rho_hat);
        }
    }
}

TEST(NestedFamily, PrefixNormsAndKSequence) {
    const SampleEstimate est(Vector::Ones(3), CovMatrix::identity(3), 1.0);
    const auto family = build_nested_family(est, prefix_bases(3, 3));
    ASSERT_EQ(family.size(), 3u);
    EXPECT_NEAR(family[0].rho_hat, 1.0, 1e-12);
    EXPECT_NEAR(family[1].rho_hat, std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(family[2].rho_hat, std::sqrt(3.0), 1e-12);
    EXPECT_EQ(family[0].k, 0);
    EXPECT_EQ(family[1].k, 1);
    EXPECT_EQ(family[2].k, 2);
    EXPECT_EQ(family[2].basis_dim, 3);

    const auto offset = build_nested_family(est, prefix_bases(3, 3), 1);
    EXPECT_EQ(offset[0].k, 1);
}

TEST(NestedFamily, FullSpaceSingleCandidate) {
    Vector m(3);
    m << 0.3, -0.2, 0.9;
    const SampleEstimate est(m, CovMatrix::diagonal(Vector::Constant(3, 2.0)), 1.0);
    const auto family = build_nested_family(est, {Matrix::Identity(3, 3)});
    ASSERT_EQ(family.size(), 1u);
    EXPECT_NEAR(family[0].rho_hat, max_insample_sharpe(est).rho_hat, 1e-12);
}

TEST(NestedFamily, SricDimensionAtLeastAicOnNestedFamilies) {
    // Any non-decreasing rho path: the SRIC choice is never smaller than the AIC choice.
    std::mt19937_64 gen(3);
    std::exponential_distribution<double> step(5.0);
    for (int trial = 0; trial < 2000; ++trial) {
        std::vector<double> rho;
        std::vector<int> k;
        double r = step(gen);
        for (int i = 0; i < 30; ++i) {
            rho.push_back(r);
            k.push_back(i);
            r += step(gen) * (trial % 2 ? 1.0 : 0.1);
        }
        const double T = 0.5 + trial % 10;
        EXPECT_GE(select_values(rho, k, Criterion::SRIC, T).chosen_index,
                  select_values(rho, k, Criterion::AIC, T).chosen_index);
    }
}

}  // namespace
}  // namespace sric
