#include "sric/backtest.hpp"

#include <cmath>
#include <limits>

#include "sric/errors.hpp"
#include "sric/estimators.hpp"
#include "sric/mvopt.hpp"
#include "sric/select.hpp"
#include "sric/simulate.hpp"
#include "sric/stats.hpp"

namespace sric {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct MonthRange {
    Date first;
    Eigen::Index begin = 0;
    Eigen::Index end = 0;
};

std::vector<MonthRange> month_ranges(const ReturnsPanel& panel) {
    std::vector<MonthRange> out;
    for (Eigen::Index i = 0; i < panel.n_periods(); ++i) {
        const Date& d = panel.dates[static_cast<std::size_t>(i)];
        if (out.empty() || out.back().first.month_index() != d.month_index()) {
            out.push_back({d, i, i + 1});
        } else {
            out.back().end = i + 1;
        }
    }
    return out;
}

// Candidate on the first `dim` factors: factor weights and in-sample rho.
struct Fitted {
    Vector factor_weights;
    double rho = 0.0;
};

Fitted fit_prefix(const SampleEstimate& est, Eigen::Index dim) {
    const Matrix block = est.sigma.entries().topLeftCorner(dim, dim);
    const Vector mu = est.mu_hat.head(dim);
    Eigen::LLT<Matrix> llt(block);
    Fitted f;
    f.factor_weights = llt.solve(mu);
    f.rho = std::sqrt(std::max(0.0, mu.dot(f.factor_weights)));
    return f;
}

// Sign-aware fit on the equal-weight factor alone.
Fitted fit_equal_weight(const SampleEstimate& est) {
    Fitted f;
    const double var = est.sigma.entries()(0, 0);
    f.factor_weights = Vector::Constant(1, est.mu_hat[0] / var);
    f.rho = std::abs(est.mu_hat[0]) / std::sqrt(var);
    return f;
}

}  // namespace

std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::SRIC: return "SRIC";
        case Strategy::AIC: return "AIC";
        case Strategy::EQUAL_WEIGHT: return "EQUAL_WEIGHT";
        case Strategy::MARKOWITZ: return "MARKOWITZ";
    }
    return "UNKNOWN";
}

Strategy strategy_from_string(const std::string& name) {
    for (Strategy s : {Strategy::SRIC, Strategy::AIC, Strategy::EQUAL_WEIGHT, Strategy::MARKOWITZ}) {
        if (to_string(s) == name) return s;
    }
    throw ConfigError({"unknown criterion '" + name + "'"});
}

void BacktestConfig::validate() const {
    std::vector<std::string> errors;
    if (lookback_months < 1) errors.push_back("lookback_months must be a positive integer");
    if (!(target_vol > 0.0) || !std::isfinite(target_vol)) errors.push_back("target_vol must be positive");
    if (max_factors < 1) errors.push_back("max_factors must be a positive integer");
    if (criteria.empty()) errors.push_back("criteria must not be empty");
    if (!(cost >= 0.0)) errors.push_back("cost must be non-negative");
    if (!errors.empty()) throw ConfigError(std::move(errors));
}

const StrategySeries& BacktestReport::at(Strategy s) const {
    for (const auto& series_for : series) {
        if (series_for.strategy == s) return series_for;
    }
    throw std::out_of_range("strategy not in report: " + to_string(s));
}

double annualized_sharpe(const std::vector<double>& monthly_returns) {
    if (monthly_returns.size() < 2) return 0.0;
    const Summary s = summarize(monthly_returns);
    if (!(s.variance > 0.0)) return 0.0;
    return s.mean / std::sqrt(s.variance) * std::sqrt(12.0);
}

BacktestReport run_rolling(const ReturnsPanel& panel, const BacktestConfig& config) {
    config.validate();
    panel.validate();
    const std::vector<MonthRange> months = month_ranges(panel);
    const auto lookback = static_cast<std::size_t>(config.lookback_months);
    if (months.size() <= lookback + 1) {
        throw DomainError("panel covers " + std::to_string(months.size()) + " months; need more than " +
                          std::to_string(lookback + 1) + " for lookback " + std::to_string(lookback));
    }

    BacktestReport report;
    report.config = config;
    report.periods_per_year = panel.periods_per_year;
    for (Strategy s : config.criteria) {
        StrategySeries series;
        series.strategy = s;
        report.series.push_back(std::move(series));
    }

    const double T = static_cast<double>(config.lookback_months) / 12.0;
    const Eigen::Index n_assets = panel.n_assets();

    for (std::size_t j = lookback; j < months.size(); ++j) {
        const MonthRange& held = months[j];
        const Eigen::Index w_begin = months[j - lookback].begin;
        const Eigen::Index w_end = months[j - 1].end;
        report.months.push_back(held.first);

        const Matrix window = panel.returns.middleRows(w_begin, w_end - w_begin);
        const Matrix held_returns = panel.returns.middleRows(held.begin, held.end - held.begin);

        FactorBasis basis;
        SampleEstimate est(Vector::Ones(1), CovMatrix::identity(1), 1.0);
        bool degenerate = false;
        try {
            basis = build_factor_basis(window);
            const Eigen::Index f = std::min<Eigen::Index>(basis.n_factors(), config.max_factors);
            basis.weights.conservativeResize(Eigen::NoChange, f);
            const SampleEstimate raw =
                sample_moments(Matrix(window * basis.weights), panel.periods_per_year);
            est = SampleEstimate(raw.mu_hat, raw.sigma, T);
        } catch (const DegenerateWindowError&) {
            degenerate = true;
        } catch (const NotPositiveDefiniteError&) {
            degenerate = true;
        }
        if (degenerate) report.degenerate_months.push_back(held.first);

        std::vector<double> rho;
        std::vector<int> ks;
        if (!degenerate) {
            const PrefixPath path = prefix_path(est);
            for (Eigen::Index i = 0; i < path.rho_hat.size(); ++i) {
                rho.push_back(path.rho_hat[i]);
                ks.push_back(static_cast<int>(i));
            }
        }

        for (StrategySeries& series : report.series) {
            Fitted fit;
            Eigen::Index dim = 0;
            if (!degenerate) {
                switch (series.strategy) {
                    case Strategy::SRIC:
                        dim = static_cast<Eigen::Index>(select_values(rho, ks, Criterion::SRIC, T).chosen_index) + 1;
                        break;
                    case Strategy::AIC:
                        dim = static_cast<Eigen::Index>(select_values(rho, ks, Criterion::AIC, T).chosen_index) + 1;
                        break;
                    case Strategy::EQUAL_WEIGHT: dim = 1; break;
                    case Strategy::MARKOWITZ: dim = est.dim(); break;
                }
                fit = series.strategy == Strategy::EQUAL_WEIGHT ? fit_equal_weight(est) : fit_prefix(est, dim);
            }

            Vector weights = Vector::Zero(n_assets);
            double vol = 0.0;
            double net = kNaN;
            if (dim > 0) {
                const Matrix sigma_block = est.sigma.entries().topLeftCorner(dim, dim);
                vol = std::sqrt(std::max(0.0, fit.factor_weights.dot(sigma_block * fit.factor_weights)));
                if (vol > 0.0) {
                    weights = basis.weights.leftCols(dim) * (fit.factor_weights * (config.target_vol / vol));
                    vol = config.target_vol;
                    const double v = sric_net(fit.rho, static_cast<int>(dim) - 1, T, config.cost);
                    if (!is_sentinel(v)) net = v;
                } else {
                    dim = 0;
                }
            }

            const double r = (held_returns * weights).sum();
            series.returns.push_back(r);
            series.cumulative.push_back((series.cumulative.empty() ? 0.0 : series.cumulative.back()) + r);
            series.selected_dim.push_back(static_cast<int>(dim));
            series.weights.push_back(std::move(weights));
            series.insample_vol.push_back(vol);
            series.insample_sric_net.push_back(net);
        }
    }

    for (StrategySeries& series : report.series) {
        series.oos_sharpe = annualized_sharpe(series.returns);
        CompensatedSum sum;
        std::size_t count = 0;
        for (double v : series.insample_sric_net) {
            if (std::isfinite(v)) {
                sum.add(v);
                ++count;
            }
        }
        series.mean_insample_sric_net = count ? sum.value() / static_cast<double>(count) : kNaN;
    }
    return report;
}

std::vector<BacktestReport> run_lookback_sweep(const ReturnsPanel& panel, const BacktestConfig& base,
                                               const std::vector<int>& lookbacks, unsigned workers) {
    std::vector<BacktestReport> reports(lookbacks.size());
    parallel_for(lookbacks.size(), workers, [&](std::size_t i) {
        BacktestConfig config = base;
        config.lookback_months = lookbacks[i];
        reports[i] = run_rolling(panel, config);
    });
    return reports;
}

}  // namespace sric
