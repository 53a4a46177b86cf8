#include "sric/core.hpp"

#include <cmath>
#include <string>

namespace sric {

namespace {

void require_dim(Eigen::Index got, Eigen::Index want, const char* what) {
    if (got != want) {
        throw DimensionError(std::string(what) + ": length " + std::to_string(got) +
                             " does not match covariance dimension " + std::to_string(want));
    }
}

}  // namespace

CovMatrix::CovMatrix(const Matrix& entries) {
    if (entries.rows() == 0 || entries.rows() != entries.cols()) {
        throw DimensionError("covariance must be a non-empty square matrix");
    }
    if (!entries.allFinite()) {
        throw NotPositiveDefiniteError("covariance has non-finite entries");
    }
    const double asym = (entries - entries.transpose()).cwiseAbs().maxCoeff();
    if (asym > kSymmetryTolerance) {
        throw NotPositiveDefiniteError("covariance is not symmetric (max asymmetry " +
                                       std::to_string(asym) + ")");
    }

    // Symmetrize so the factor describes exactly the matrix we report.
    Matrix sym = 0.5 * (entries + entries.transpose());
    const double max_diag = sym.diagonal().maxCoeff();
    if (!(max_diag > 0.0)) {
        throw NotPositiveDefiniteError("covariance has no positive diagonal entry");
    }

    Eigen::LLT<Matrix> llt(sym);
    if (llt.info() != Eigen::Success) {
        throw NotPositiveDefiniteError("covariance is not positive definite");
    }
    Matrix lower = llt.matrixL();
    const double floor = kRelativePivotFloor * max_diag;
    for (Eigen::Index i = 0; i < lower.rows(); ++i) {
        const double pivot = lower(i, i) * lower(i, i);
        if (!(pivot > floor)) {
            throw NotPositiveDefiniteError("covariance is numerically singular (pivot " +
                                           std::to_string(i) + ")");
        }
    }
    state_ = std::make_shared<const State>(State{std::move(sym), std::move(lower)});
}

CovMatrix CovMatrix::identity(Eigen::Index dim) {
    return CovMatrix(Matrix::Identity(dim, dim));
}

CovMatrix CovMatrix::diagonal(const Vector& variances) {
    return CovMatrix(Matrix(variances.asDiagonal()));
}

Vector CovMatrix::whiten(const Vector& x) const {
    require_dim(x.size(), dim(), "whiten");
    return state_->lower.triangularView<Eigen::Lower>().solve(x);
}

Vector CovMatrix::solve(const Vector& x) const {
    Vector y = whiten(x);
    state_->lower.transpose().triangularView<Eigen::Upper>().solveInPlace(y);
    return y;
}

Vector CovMatrix::color(const Vector& z) const {
    require_dim(z.size(), dim(), "color");
    return state_->lower.triangularView<Eigen::Lower>() * z;
}

double CovMatrix::quadratic_form(const Vector& x) const {
    require_dim(x.size(), dim(), "quadratic_form");
    const Vector lt_x = state_->lower.transpose().triangularView<Eigen::Upper>() * x;
    return lt_x.squaredNorm();
}

PopulationModel::PopulationModel(Vector mu_, CovMatrix sigma_, double horizon)
    : mu(std::move(mu_)), sigma(std::move(sigma_)), horizon_years(horizon) {
    require_dim(mu.size(), sigma.dim(), "population mean");
    if (!(horizon_years > 0.0) || !std::isfinite(horizon_years)) {
        throw DomainError("horizon_years must be positive and finite");
    }
}

SampleEstimate::SampleEstimate(Vector mu_hat_, CovMatrix sigma_, double horizon)
    : mu_hat(std::move(mu_hat_)), sigma(std::move(sigma_)), horizon_years(horizon) {
    require_dim(mu_hat.size(), sigma.dim(), "estimated mean");
    if (!(horizon_years > 0.0) || !std::isfinite(horizon_years)) {
        throw DomainError("horizon_years must be positive and finite");
    }
}

double mahalanobis_norm(const Vector& x, const CovMatrix& sigma) {
    return sigma.whiten(x).norm();
}

Vector whiten(const Vector& x, const CovMatrix& sigma) {
    return sigma.whiten(x);
}

}  // namespace sric
