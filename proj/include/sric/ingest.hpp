#pragma once

#include <compare>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sric/core.hpp"

namespace sric {

struct Date {
    int year = 1970;
    int month = 1;
    int day = 1;

    auto operator<=>(const Date&) const = default;

    /// Accepts YYYYMMDD and YYYY-MM-DD.
    static std::optional<Date> parse(std::string_view text);
    std::string iso() const;
    /// Months since year 0; consecutive calendar months differ by one.
    int month_index() const noexcept { return year * 12 + (month - 1); }
};

/// Simple per-period returns in fraction units, one row per date.
struct ReturnsPanel {
    std::vector<Date> dates;
    std::vector<std::string> asset_labels;
    Matrix returns;  // dates x assets
    int periods_per_year = 252;
    std::size_t dropped_rows = 0;  // rows removed for missing values

    Eigen::Index n_periods() const noexcept { return returns.rows(); }
    Eigen::Index n_assets() const noexcept { return returns.cols(); }

    /// Rows [begin, end).
    ReturnsPanel slice(Eigen::Index begin, Eigen::Index end) const;
    /// Throws ParseError when dates are not strictly increasing or shapes disagree.
    void validate() const;
};

/// RFC-4180 field split; quoted fields may contain commas and doubled quotes.
/// Unquoted whitespace around fields is trimmed.
std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_no = 0);

enum class Units { Fraction, Percent };

struct CsvOptions {
    std::string date_column;  // header name; empty means the first column
    Units units = Units::Fraction;
    std::vector<double> missing_codes;
    bool skip_preamble = false;       // skip free text before the header row
    bool stop_at_block_end = false;   // stop at the first blank or non-date row after data
    int periods_per_year = 252;

    static CsvOptions generic();
    /// Kenneth French library layout: text preamble, YYYYMMDD dates, percent
    /// units, -99.99 / -999 missing codes, several blocks per file (first is read).
    static CsvOptions french_daily();
    static CsvOptions french_monthly();
};

ReturnsPanel parse_returns_csv(std::istream& in, const CsvOptions& options);
ReturnsPanel load_returns_csv(const std::filesystem::path& path, const CsvOptions& options);

/// Per-period risk-free rates keyed by date.
struct RateSeries {
    std::vector<Date> dates;
    std::vector<double> rates;
};

struct RateOptions {
    Units units = Units::Fraction;
    /// Rates quoted per year are divided by periods_per_year.
    bool annualized = false;
    int periods_per_year = 252;
};

RateSeries parse_riskfree_csv(std::istream& in, const RateOptions& options);
RateSeries load_riskfree_csv(const std::filesystem::path& path, const RateOptions& options);

/// Inner join on dates, then subtract the rate from every asset.
/// Throws AlignmentError when no dates overlap.
ReturnsPanel to_excess(const ReturnsPanel& panel, const RateSeries& riskfree);

/// Column 0 is the equal-weight portfolio ones / sqrt(n); the rest are
/// principal directions of the sample covariance restricted to the
/// complement of the ones vector, in descending variance. Directions with no
/// variance in the window are dropped, so there may be fewer than n columns.
struct FactorBasis {
    Matrix weights;        // assets x factors, orthonormal columns
    Vector variances;      // per-period variance of each factor in the window
    Eigen::Index dropped = 0;

    Eigen::Index n_factors() const noexcept { return weights.cols(); }
};

FactorBasis build_factor_basis(const Matrix& window_returns);
FactorBasis build_factor_basis(const ReturnsPanel& window);

enum class CovDenominator { N, NMinusOne };

/// Annualized mean and covariance of a window; horizon = rows / periods_per_year.
/// Throws DegenerateWindowError when the covariance is not positive definite.
SampleEstimate sample_moments(const Matrix& returns, int periods_per_year,
                              CovDenominator denominator = CovDenominator::N);
SampleEstimate sample_moments(const ReturnsPanel& window,
                              CovDenominator denominator = CovDenominator::N);

/// GLS regression r_t = x_t theta + eps_t, Cov(eps_t) = S_t.
struct RegressionPanel {
    Matrix market_returns;                  // dates x N
    std::vector<Matrix> factor_predictions; // one N x (k+1) matrix per date
    std::vector<CovMatrix> residual_cov;    // one per date, or a single constant entry
    double annualization = 1.0;             // c
    int periods_per_year = 12;

    std::size_t n_dates() const noexcept { return factor_predictions.size(); }
    const CovMatrix& residual_at(std::size_t t) const {
        return residual_cov.size() == 1 ? residual_cov.front() : residual_cov.at(t);
    }
    void validate() const;
};

/// Assemble x_t from user-supplied prediction signals: predictor j contributes
/// column j of x_t, taken from row t of predictions[j] (dates x N).
RegressionPanel make_regression_panel(const Matrix& market_returns,
                                      const std::vector<Matrix>& predictions,
                                      std::vector<CovMatrix> residual_cov, double annualization,
                                      int periods_per_year);

/// mu_hat = c sum_t x_t^T S_t^{-1} r_t, Sigma = c sum_t x_t^T S_t^{-1} x_t;
/// the Sharpe maximizer of the result is the GLS coefficient direction.
SampleEstimate regression_to_mv(const RegressionPanel& panel);

}  // namespace sric
