#include "sric/select.hpp"

#include "sric/mvopt.hpp"

namespace sric {

std::vector<ModelCandidate> build_nested_family(const SampleEstimate& est,
                                                const std::vector<Matrix>& bases, int k_offset) {
    std::vector<ModelCandidate> family;
    family.reserve(bases.size());
    for (std::size_t i = 0; i < bases.size(); ++i) {
        SharpeMaximizer fit = max_insample_sharpe_subspace(est, bases[i]);
        ModelCandidate c;
        c.label = "model_" + std::to_string(i + 1);
        c.rho_hat = fit.rho_hat;
        c.basis_dim = static_cast<int>(bases[i].cols());
        c.k = c.basis_dim - 1 + k_offset;
        c.theta_hat = std::move(fit.theta_hat);
        family.push_back(std::move(c));
    }
    return family;
}

std::vector<Matrix> prefix_bases(Eigen::Index dim, Eigen::Index count) {
    if (count > dim) throw DimensionError("more prefixes requested than dimensions");
    std::vector<Matrix> bases;
    bases.reserve(static_cast<std::size_t>(count));
    const Matrix eye = Matrix::Identity(dim, dim);
    for (Eigen::Index i = 1; i <= count; ++i) bases.emplace_back(eye.leftCols(i));
    return bases;
}

SelectionResult select(const std::vector<ModelCandidate>& candidates, Criterion criterion, double T) {
    std::vector<double> rho;
    std::vector<int> k;
    rho.reserve(candidates.size());
    k.reserve(candidates.size());
    for (const auto& c : candidates) {
        rho.push_back(c.rho_hat);
        k.push_back(c.k);
    }
    return select_values(rho, k, criterion, T);
}

SelectionResult select_values(std::span<const double> rho_hat, std::span<const int> k,
                              Criterion criterion, double T) {
    if (rho_hat.empty()) throw EmptyFamilyError("cannot select from an empty model family");
    if (rho_hat.size() != k.size()) throw DimensionError("rho_hat and k differ in length");
    if (criterion != Criterion::SRIC && criterion != Criterion::AIC) {
        throw DomainError("selection supports SRIC and AIC only");
    }

    SelectionResult out;
    out.criterion = criterion;
    out.criterion_values.resize(rho_hat.size());
    for (std::size_t i = 0; i < rho_hat.size(); ++i) {
        out.criterion_values[i] = criterion == Criterion::SRIC ? sric(rho_hat[i], k[i], T)
                                                               : aic(rho_hat[i], k[i], T);
    }

    // Orient so that larger is better in both cases.
    const double sign = criterion == Criterion::SRIC ? 1.0 : -1.0;
    std::size_t best = 0;
    std::size_t ties = 1;
    for (std::size_t i = 1; i < rho_hat.size(); ++i) {
        const double vi = sign * out.criterion_values[i];
        const double vb = sign * out.criterion_values[best];
        if (vi > vb) {
            best = i;
            ties = 1;
        } else if (vi == vb) {
            ++ties;
            if (k[i] < k[best]) best = i;
        }
    }
    out.chosen_index = best;
    out.tie_broken = ties > 1;
    return out;
}

}  // namespace sric
