#include "sric/stats.hpp"

#include <algorithm>
#include <cmath>

namespace sric {

void CompensatedSum::add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
        compensation_ += (sum_ - t) + x;
    } else {
        compensation_ += (x - t) + sum_;
    }
    sum_ = t;
}

Summary summarize(std::span<const double> values) {
    Summary s;
    s.count = static_cast<std::int64_t>(values.size());
    if (values.empty()) return s;

    CompensatedSum total;
    for (double v : values) total.add(v);
    s.mean = total.value() / static_cast<double>(values.size());
    if (values.size() < 2) return s;

    CompensatedSum squares;
    for (double v : values) {
        const double d = v - s.mean;
        squares.add(d * d);
    }
    s.variance = squares.value() / static_cast<double>(values.size() - 1);
    s.se = std::sqrt(s.variance / static_cast<double>(values.size()));
    return s;
}

Histogram::Histogram(double lower_, double width_, std::size_t bins)
    : lower(lower_), width(width_), counts(bins, 0) {}

void Histogram::add(double x) {
    if (std::isnan(x)) return;
    const double pos = (x - lower) / width;
    if (pos < 0.0) {
        ++underflow;
    } else if (pos >= static_cast<double>(counts.size())) {
        ++overflow;
    } else {
        ++counts[static_cast<std::size_t>(pos)];
    }
}

Histogram make_histogram(std::span<const double> values, double lower, double width, std::size_t bins) {
    Histogram h(lower, width, bins);
    for (double v : values) h.add(v);
    return h;
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) return 0.0;
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::max(f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f));
    }
    return d;
}

}  // namespace sric
