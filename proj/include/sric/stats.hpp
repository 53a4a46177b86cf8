#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace sric {

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x) noexcept;
    double value() const noexcept { return sum_ + compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

struct Summary {
    double mean = 0.0;
    double variance = 0.0;  // sample variance, denominator n - 1
    double se = 0.0;        // sqrt(variance / n)
    std::int64_t count = 0;
};

/// Two-pass compensated mean and variance.
Summary summarize(std::span<const double> values);

/// Fixed-width bins on [lower, lower + width * bins); values outside are
/// counted as underflow/overflow.
struct Histogram {
    double lower = 0.0;
    double width = 1.0;
    std::vector<std::int64_t> counts;
    std::int64_t underflow = 0;
    std::int64_t overflow = 0;

    Histogram() = default;
    Histogram(double lower, double width, std::size_t bins);

    void add(double x);
    double edge(std::size_t i) const { return lower + width * static_cast<double>(i); }
};

Histogram make_histogram(std::span<const double> values, double lower, double width, std::size_t bins);

/// sup_x |F_n(x) - F(x)| for the empirical distribution of `samples`.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

}  // namespace sric
