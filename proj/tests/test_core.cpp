#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sric/core.hpp"

using namespace sric;

namespace {

Matrix random_spd(int n, std::mt19937_64& gen) {
    std::normal_distribution<double> z;
    Matrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = z(gen);
    return a * a.transpose() + 0.1 * Matrix::Identity(n, n);
}

}  // namespace

TEST(CovMatrix, RejectsNonSquareAndEmpty) {
    EXPECT_THROW(CovMatrix(Matrix(2, 3)), DimensionError);
    EXPECT_THROW(CovMatrix(Matrix(0, 0)), DimensionError);
}

TEST(CovMatrix, RejectsAsymmetric) {
    Matrix m(2, 2);
    m << 1.0, 0.5, 0.4, 1.0;
    EXPECT_THROW(CovMatrix{m}, NotPositiveDefiniteError);
}

TEST(CovMatrix, RejectsSingularAndIndefinite) {
    Matrix singular(2, 2);
    singular << 1.0, 1.0, 1.0, 1.0;
    EXPECT_THROW(CovMatrix{singular}, NotPositiveDefiniteError);
    Matrix indefinite(2, 2);
    indefinite << 1.0, 2.0, 2.0, 1.0;
    EXPECT_THROW(CovMatrix{indefinite}, NotPositiveDefiniteError);
}

TEST(CovMatrix, RejectsNonFinite) {
    Matrix m = Matrix::Identity(2, 2);
    m(0, 0) = std::nan("");
    EXPECT_THROW(CovMatrix{m}, NotPositiveDefiniteError);
}

TEST(CovMatrix, CholeskyReproducesEntries) {
    std::mt19937_64 gen(3);
    const Matrix s = random_spd(6, gen);
    const CovMatrix c(s);
    const Matrix& L = c.cholesky_factor();
    EXPECT_LT((L * L.transpose() - s).norm(), 1e-10 * s.norm());
    EXPECT_TRUE(L.isLowerTriangular());
}

TEST(CovMatrix, SolveMatchesExplicitInverse) {
    std::mt19937_64 gen(4);
    const Matrix s = random_spd(5, gen);
    const CovMatrix c(s);
    const Vector x = Vector::LinSpaced(5, -1.0, 2.0);
    EXPECT_LT((c.solve(x) - s.inverse() * x).norm(), 1e-9);
    EXPECT_NEAR(c.quadratic_form(x), x.dot(s * x), 1e-10);
}

TEST(CovMatrix, WhitenAndColorAreInverse) {
    std::mt19937_64 gen(5);
    const CovMatrix c(random_spd(4, gen));
    const Vector x(Vector::LinSpaced(4, 0.5, 3.0));
    EXPECT_LT((c.color(c.whiten(x)) - x).norm(), 1e-12);
}

TEST(CovMatrix, DimensionMismatchThrows) {
    const CovMatrix c = CovMatrix::identity(3);
    EXPECT_THROW(c.solve(Vector::Ones(2)), DimensionError);
    EXPECT_THROW(c.whiten(Vector::Ones(4)), DimensionError);
    EXPECT_THROW(c.color(Vector::Ones(2)), DimensionError);
    EXPECT_THROW(c.quadratic_form(Vector::Ones(2)), DimensionError);
}

TEST(CovMatrix, DiagonalFactory) {
    const CovMatrix c = CovMatrix::diagonal(Vector::Constant(3, 4.0));
    EXPECT_DOUBLE_EQ(c.cholesky_factor()(1, 1), 2.0);
    EXPECT_THROW(CovMatrix::diagonal(Vector::Constant(2, -1.0)), NotPositiveDefiniteError);
}

TEST(Mahalanobis, IdentityAndDiagonalExamples) {
    // |(1,1)| under the identity is sqrt(2).
    EXPECT_NEAR(mahalanobis_norm(Vector::Ones(2), CovMatrix::identity(2)), std::sqrt(2.0), 1e-15);
    // (2,0) under diag(4,1) whitens to (1,0).
    Vector v(2);
    v << 2.0, 0.0;
    const CovMatrix d = CovMatrix::diagonal((Vector(2) << 4.0, 1.0).finished());
    const Vector w = whiten(v, d);
    EXPECT_NEAR(w[0], 1.0, 1e-15);
    EXPECT_NEAR(w[1], 0.0, 1e-15);
    EXPECT_NEAR(mahalanobis_norm(v, d), 1.0, 1e-15);
}

TEST(Mahalanobis, MatchesInverseQuadraticFormOnRandomInputs) {
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + trial % 8;
        const Matrix s = random_spd(n, gen);
        Vector x(n);
        std::normal_distribution<double> z;
        for (int i = 0; i < n; ++i) x[i] = z(gen);
        const double oracle = std::sqrt(x.dot(s.inverse() * x));
        EXPECT_NEAR(mahalanobis_norm(x, CovMatrix(s)), oracle, 1e-8 * (1.0 + oracle));
    }
}

TEST(Mahalanobis, ScalesWithLeverage) {
    // |c x|_{(c^2 Sigma)^{-1}} = |x|_{Sigma^{-1}}
    std::mt19937_64 gen(12);
    const Matrix s = random_spd(4, gen);
    const Vector x = Vector::LinSpaced(4, -2.0, 1.0);
    EXPECT_NEAR(mahalanobis_norm(3.0 * x, CovMatrix(9.0 * s)), mahalanobis_norm(x, CovMatrix(s)), 1e-12);
}

TEST(Models, ValidateDimensionsAndHorizon) {
    EXPECT_THROW(PopulationModel(Vector::Ones(2), CovMatrix::identity(3), 1.0), DimensionError);
    EXPECT_THROW(PopulationModel(Vector::Ones(2), CovMatrix::identity(2), 0.0), DomainError);
    EXPECT_THROW(SampleEstimate(Vector::Ones(3), CovMatrix::identity(2), 1.0), DimensionError);
    EXPECT_THROW(SampleEstimate(Vector::Ones(2), CovMatrix::identity(2), -1.0), DomainError);
}
