#pragma once

#include <span>
#include <string>
#include <vector>

#include "sric/core.hpp"
#include "sric/estimators.hpp"

namespace sric {

/// One member of a model family with its in-sample optimum.
struct ModelCandidate {
    std::string label;
    double rho_hat = 0.0;
    int k = 0;          // Sharpe-relevant parameters
    Vector theta_hat;   // full-space embedding of the in-sample optimum
    int basis_dim = 1;  // d; for portfolio families k = d - 1
};

struct SelectionResult {
    std::size_t chosen_index = 0;
    Criterion criterion = Criterion::SRIC;
    std::vector<double> criterion_values;
    bool tie_broken = false;
};

/// Candidate i maximizes the in-sample Sharpe on span(bases[i]) with
/// k = columns(bases[i]) - 1. `k_offset` adds to every k (sensitivity runs use 1).
std::vector<ModelCandidate> build_nested_family(const SampleEstimate& est,
                                                const std::vector<Matrix>& bases,
                                                int k_offset = 0);

/// Coordinate-prefix bases: the first i columns of the identity, i = 1..n.
std::vector<Matrix> prefix_bases(Eigen::Index dim, Eigen::Index count);

/// SRIC picks the maximum, AIC the minimum of -T rho^2 + 2(k+1).
/// Ties go to the smaller k, then the smaller index.
SelectionResult select(const std::vector<ModelCandidate>& candidates, Criterion criterion, double T);

/// Same as select() on parallel (rho_hat, k) arrays; no candidate objects needed.
SelectionResult select_values(std::span<const double> rho_hat, std::span<const int> k,
                              Criterion criterion, double T);

}  // namespace sric
