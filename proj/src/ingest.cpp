#include "sric/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>

namespace sric {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

bool blank(std::string_view line) { return trim(line).empty(); }

std::optional<double> parse_number(std::string_view text) {
    text = trim(text);
    if (text.empty()) return std::nullopt;
    if (text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
    return value;
}

bool is_missing_token(std::string_view text) {
    text = trim(text);
    return text.empty() || text == "NA" || text == "NaN" || text == "nan" || text == "null";
}

bool matches_code(double value, const std::vector<double>& codes) {
    return std::any_of(codes.begin(), codes.end(),
                       [&](double c) { return std::abs(value - c) <= 1e-9 * std::max(1.0, std::abs(c)); });
}

double unit_scale(Units u) { return u == Units::Percent ? 0.01 : 1.0; }

}  // namespace

std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(ch);
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.emplace_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (quoted) throw ParseError("unterminated quoted field", line_no);
    fields.emplace_back(trim(cur));
    return fields;
}

std::optional<Date> Date::parse(std::string_view text) {
    text = trim(text);
    auto digits = [](std::string_view s, int& out) {
        if (s.empty()) return false;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        return ec == std::errc() && ptr == s.data() + s.size();
    };
    Date d;
    bool ok = false;
    if (text.size() == 10 && text[4] == '-' && text[7] == '-') {
        ok = digits(text.substr(0, 4), d.year) && digits(text.substr(5, 2), d.month) &&
             digits(text.substr(8, 2), d.day);
    } else if (text.size() == 8 && std::all_of(text.begin(), text.end(), ::isdigit)) {
        ok = digits(text.substr(0, 4), d.year) && digits(text.substr(4, 2), d.month) &&
             digits(text.substr(6, 2), d.day);
    } else if (text.size() == 6 && std::all_of(text.begin(), text.end(), ::isdigit)) {
        ok = digits(text.substr(0, 4), d.year) && digits(text.substr(4, 2), d.month);
        d.day = 1;
    }
    if (!ok || d.month < 1 || d.month > 12 || d.day < 1 || d.day > 31) return std::nullopt;
    return d;
}

std::string Date::iso() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
    return buf;
}

ReturnsPanel ReturnsPanel::slice(Eigen::Index begin, Eigen::Index end) const {
    if (begin < 0 || end > n_periods() || begin > end) throw DimensionError("slice out of range");
    ReturnsPanel out;
    out.dates.assign(dates.begin() + begin, dates.begin() + end);
    out.asset_labels = asset_labels;
    out.returns = returns.middleRows(begin, end - begin);
    out.periods_per_year = periods_per_year;
    return out;
}

void ReturnsPanel::validate() const {
    if (static_cast<Eigen::Index>(dates.size()) != returns.rows()) {
        throw DimensionError("panel has " + std::to_string(dates.size()) + " dates but " +
                             std::to_string(returns.rows()) + " rows");
    }
    if (static_cast<Eigen::Index>(asset_labels.size()) != returns.cols()) {
        throw DimensionError("panel labels do not match its columns");
    }
    if (periods_per_year <= 0) throw DomainError("periods_per_year must be positive");
    for (std::size_t i = 1; i < dates.size(); ++i) {
        if (!(dates[i - 1] < dates[i])) {
            throw ParseError("dates not strictly increasing at " + dates[i].iso(), 0);
        }
    }
}

CsvOptions CsvOptions::generic() { return CsvOptions{}; }

CsvOptions CsvOptions::french_daily() {
    CsvOptions o;
    o.units = Units::Percent;
    o.missing_codes = {-99.99, -999.0};
    o.skip_preamble = true;
    o.stop_at_block_end = true;
    o.periods_per_year = 252;
    return o;
}

CsvOptions CsvOptions::french_monthly() {
    CsvOptions o = french_daily();
    o.periods_per_year = 12;
    return o;
}

ReturnsPanel parse_returns_csv(std::istream& in, const CsvOptions& options) {
    if (options.periods_per_year <= 0) throw DomainError("periods_per_year must be positive");

    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    std::size_t header_line = 0;
    std::vector<std::pair<std::size_t, std::string>> pending;  // first data row found while scanning

    if (options.skip_preamble) {
        // The header is the last non-blank line before the first row that starts with a date.
        std::string last_nonblank;
        std::size_t last_nonblank_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (blank(line)) continue;
            const auto cells = split_csv_line(line, line_no);
            if (Date::parse(cells.front())) {
                if (last_nonblank.empty()) throw ParseError("data row before any header", line_no);
                header = split_csv_line(last_nonblank, last_nonblank_no);
                header_line = last_nonblank_no;
                pending.emplace_back(line_no, line);
                break;
            }
            last_nonblank = line;
            last_nonblank_no = line_no;
        }
    } else {
        while (std::getline(in, line)) {
            ++line_no;
            if (blank(line)) continue;
            header = split_csv_line(line, line_no);
            header_line = line_no;
            break;
        }
    }
    if (header.empty()) throw EmptyDataError("no header row found");

    std::size_t date_col = 0;
    if (!options.date_column.empty()) {
        auto it = std::find(header.begin(), header.end(), options.date_column);
        if (it == header.end()) {
            throw ParseError("date column '" + options.date_column + "' not in header", header_line);
        }
        date_col = static_cast<std::size_t>(it - header.begin());
    }

    ReturnsPanel panel;
    panel.periods_per_year = options.periods_per_year;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (c != date_col) panel.asset_labels.push_back(header[c]);
    }
    if (panel.asset_labels.empty()) throw ParseError("header names no asset columns", header_line);

    const double scale = unit_scale(options.units);
    std::vector<double> values;
    const std::size_t n_assets = panel.asset_labels.size();

    auto consume = [&](std::size_t no, const std::string& text) -> bool {
        if (blank(text)) return !options.stop_at_block_end || panel.dates.empty();
        const auto cells = split_csv_line(text, no);
        const auto date = Date::parse(cells.at(std::min(date_col, cells.size() - 1)));
        if (!date) {
            if (options.stop_at_block_end) return false;
            throw ParseError("unparseable date '" + cells.at(std::min(date_col, cells.size() - 1)) + "'", no);
        }
        if (cells.size() != header.size()) {
            throw ParseError("expected " + std::to_string(header.size()) + " fields, found " +
                                 std::to_string(cells.size()),
                             no);
        }
        std::vector<double> row;
        row.reserve(n_assets);
        bool missing = false;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c == date_col) continue;
            if (is_missing_token(cells[c])) {
                missing = true;
                continue;
            }
            const auto v = parse_number(cells[c]);
            if (!v) throw ParseError("non-numeric value '" + cells[c] + "'", no);
            if (matches_code(*v, options.missing_codes)) missing = true;
            row.push_back(*v * scale);
        }
        if (missing) {
            ++panel.dropped_rows;
            return true;
        }
        if (!panel.dates.empty() && !(panel.dates.back() < *date)) {
            throw ParseError("dates not strictly increasing at " + date->iso(), no);
        }
        panel.dates.push_back(*date);
        values.insert(values.end(), row.begin(), row.end());
        return true;
    };

    bool more = true;
    for (const auto& [no, text] : pending) more = consume(no, text);
    while (more && std::getline(in, line)) {
        ++line_no;
        more = consume(line_no, line);
    }

    if (panel.dates.empty()) throw EmptyDataError("no complete data rows");
    panel.returns = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        values.data(), static_cast<Eigen::Index>(panel.dates.size()), static_cast<Eigen::Index>(n_assets));
    return panel;
}

ReturnsPanel load_returns_csv(const std::filesystem::path& path, const CsvOptions& options) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string(), 0);
    try {
        return parse_returns_csv(in, options);
    } catch (const ParseError& e) {
        throw e.in_file(path.string());
    }
}

RateSeries parse_riskfree_csv(std::istream& in, const RateOptions& options) {
    if (options.periods_per_year <= 0) throw DomainError("periods_per_year must be positive");
    RateSeries series;
    std::string line;
    std::size_t line_no = 0;
    const double scale = unit_scale(options.units) / (options.annualized ? options.periods_per_year : 1);
    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line)) continue;
        const auto cells = split_csv_line(line, line_no);
        const auto date = Date::parse(cells.front());
        if (!date) {
            if (series.dates.empty()) continue;  // header
            throw ParseError("unparseable date '" + cells.front() + "'", line_no);
        }
        if (cells.size() < 2) throw ParseError("expected date,rate", line_no);
        if (is_missing_token(cells[1])) continue;
        const auto v = parse_number(cells[1]);
        if (!v) throw ParseError("non-numeric rate '" + cells[1] + "'", line_no);
        if (!series.dates.empty() && !(series.dates.back() < *date)) {
            throw ParseError("dates not strictly increasing at " + date->iso(), line_no);
        }
        series.dates.push_back(*date);
        series.rates.push_back(*v * scale);
    }
    if (series.dates.empty()) throw EmptyDataError("risk-free file has no rows");
    return series;
}

RateSeries load_riskfree_csv(const std::filesystem::path& path, const RateOptions& options) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string(), 0);
    try {
        return parse_riskfree_csv(in, options);
    } catch (const ParseError& e) {
        throw e.in_file(path.string());
    }
}

ReturnsPanel to_excess(const ReturnsPanel& panel, const RateSeries& riskfree) {
    std::map<Date, double> rate;
    for (std::size_t i = 0; i < riskfree.dates.size(); ++i) rate[riskfree.dates[i]] = riskfree.rates[i];

    std::vector<Eigen::Index> keep;
    std::vector<double> rf;
    for (std::size_t i = 0; i < panel.dates.size(); ++i) {
        auto it = rate.find(panel.dates[i]);
        if (it == rate.end()) continue;
        keep.push_back(static_cast<Eigen::Index>(i));
        rf.push_back(it->second);
    }
    if (keep.empty()) throw AlignmentError("return panel and risk-free series share no dates");

    ReturnsPanel out;
    out.asset_labels = panel.asset_labels;
    out.periods_per_year = panel.periods_per_year;
    out.dropped_rows = panel.dropped_rows;
    out.returns.resize(static_cast<Eigen::Index>(keep.size()), panel.n_assets());
    for (std::size_t j = 0; j < keep.size(); ++j) {
        out.dates.push_back(panel.dates[static_cast<std::size_t>(keep[j])]);
        out.returns.row(static_cast<Eigen::Index>(j)) = panel.returns.row(keep[j]).array() - rf[j];
    }
    return out;
}

namespace {

Matrix sample_covariance(const Matrix& x, CovDenominator denominator) {
    const Eigen::Index n = x.rows();
    const Matrix centered = x.rowwise() - x.colwise().mean();
    const double div = denominator == CovDenominator::N ? static_cast<double>(n) : static_cast<double>(n - 1);
    return (centered.transpose() * centered) / div;
}

}  // namespace

FactorBasis build_factor_basis(const Matrix& window) {
    const Eigen::Index n_obs = window.rows();
    const Eigen::Index n = window.cols();
    if (n == 0) throw DegenerateWindowError("window has no assets");
    if (n_obs < n + 1) {
        throw DegenerateWindowError("window has " + std::to_string(n_obs) + " observations for " +
                                    std::to_string(n) + " assets");
    }
    const Matrix cov = sample_covariance(window, CovDenominator::N);
    const double scale = std::max(cov.diagonal().maxCoeff(), 0.0);
    const double tol = 1e-10 * scale;

    const Vector e0 = Vector::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
    const double var0 = e0.dot(cov * e0);
    if (!(var0 > tol) || !(scale > 0.0)) {
        throw DegenerateWindowError("equal-weight portfolio has no variance in the window");
    }

    // Orthonormal complement of the ones vector from a Householder reflection.
    Eigen::HouseholderQR<Matrix> qr(e0);
    const Matrix q = qr.householderQ() * Matrix::Identity(n, n);
    const Matrix complement = q.rightCols(n - 1);

    FactorBasis basis;
    std::vector<std::pair<double, Vector>> directions;
    if (n > 1) {
        const Matrix reduced = complement.transpose() * cov * complement;
        Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (reduced + reduced.transpose()));
        for (Eigen::Index j = n - 2; j >= 0; --j) {  // eigenvalues ascend
            const double lambda = eig.eigenvalues()[j];
            if (!(lambda > tol)) {
                ++basis.dropped;
                continue;
            }
            Vector v = complement * eig.eigenvectors().col(j);
            Eigen::Index pivot = 0;
            v.cwiseAbs().maxCoeff(&pivot);
            if (v[pivot] < 0.0) v = -v;
            directions.emplace_back(lambda, std::move(v));
        }
    }

    basis.weights.resize(n, 1 + static_cast<Eigen::Index>(directions.size()));
    basis.variances.resize(basis.weights.cols());
    basis.weights.col(0) = e0;
    basis.variances[0] = var0;
    for (std::size_t j = 0; j < directions.size(); ++j) {
        basis.weights.col(static_cast<Eigen::Index>(j) + 1) = directions[j].second;
        basis.variances[static_cast<Eigen::Index>(j) + 1] = directions[j].first;
    }
    return basis;
}

FactorBasis build_factor_basis(const ReturnsPanel& window) { return build_factor_basis(window.returns); }

SampleEstimate sample_moments(const Matrix& returns, int periods_per_year, CovDenominator denominator) {
    if (periods_per_year <= 0) throw DomainError("periods_per_year must be positive");
    if (returns.rows() < 2) throw DegenerateWindowError("need at least two observations");
    if (returns.cols() == 0) throw DegenerateWindowError("window has no assets");
    const double ppy = static_cast<double>(periods_per_year);
    Vector mu = returns.colwise().mean().transpose() * ppy;
    Matrix cov = sample_covariance(returns, denominator) * ppy;
    try {
        return SampleEstimate(std::move(mu), CovMatrix(cov), static_cast<double>(returns.rows()) / ppy);
    } catch (const NotPositiveDefiniteError& e) {
        throw DegenerateWindowError(std::string("sample covariance: ") + e.what());
    }
}

SampleEstimate sample_moments(const ReturnsPanel& window, CovDenominator denominator) {
    return sample_moments(window.returns, window.periods_per_year, denominator);
}

void RegressionPanel::validate() const {
    const Eigen::Index n = market_returns.cols();
    if (static_cast<std::size_t>(market_returns.rows()) != factor_predictions.size()) {
        throw DimensionError("one prediction matrix per date is required");
    }
    if (factor_predictions.empty()) throw EmptyDataError("regression panel has no dates");
    const Eigen::Index p = factor_predictions.front().cols();
    for (const auto& x : factor_predictions) {
        if (x.rows() != n || x.cols() != p) throw DimensionError("prediction matrices must all be N x (k+1)");
    }
    if (residual_cov.empty() || (residual_cov.size() != 1 && residual_cov.size() != factor_predictions.size())) {
        throw DimensionError("residual covariance must be constant or given per date");
    }
    for (const auto& s : residual_cov) {
        if (s.dim() != n) throw DimensionError("residual covariance must be N x N");
    }
    if (!(annualization > 0.0)) throw DomainError("annualization constant must be positive");
    if (periods_per_year <= 0) throw DomainError("periods_per_year must be positive");
}

RegressionPanel make_regression_panel(const Matrix& market_returns, const std::vector<Matrix>& predictions,
                                      std::vector<CovMatrix> residual_cov, double annualization,
                                      int periods_per_year) {
    if (predictions.empty()) throw DimensionError("at least one predictor is required");
    const Eigen::Index dates = market_returns.rows();
    const Eigen::Index n = market_returns.cols();
    for (const auto& p : predictions) {
        if (p.rows() != dates || p.cols() != n) throw DimensionError("each predictor must be dates x N");
    }
    RegressionPanel panel;
    panel.market_returns = market_returns;
    panel.residual_cov = std::move(residual_cov);
    panel.annualization = annualization;
    panel.periods_per_year = periods_per_year;
    panel.factor_predictions.reserve(static_cast<std::size_t>(dates));
    for (Eigen::Index t = 0; t < dates; ++t) {
        Matrix x(n, static_cast<Eigen::Index>(predictions.size()));
        for (std::size_t j = 0; j < predictions.size(); ++j) {
            x.col(static_cast<Eigen::Index>(j)) = predictions[j].row(t).transpose();
        }
        panel.factor_predictions.push_back(std::move(x));
    }
    panel.validate();
    return panel;
}

SampleEstimate regression_to_mv(const RegressionPanel& panel) {
    panel.validate();
    const Eigen::Index p = panel.factor_predictions.front().cols();
    Vector mu = Vector::Zero(p);
    Matrix sigma = Matrix::Zero(p, p);
    for (std::size_t t = 0; t < panel.n_dates(); ++t) {
        const Matrix& x = panel.factor_predictions[t];
        const CovMatrix& s = panel.residual_at(t);
        // S^{-1} x column by column through the cached factor.
        Matrix sinv_x(x.rows(), p);
        for (Eigen::Index j = 0; j < p; ++j) sinv_x.col(j) = s.solve(x.col(j));
        mu += sinv_x.transpose() * panel.market_returns.row(static_cast<Eigen::Index>(t)).transpose();
        sigma += x.transpose() * sinv_x;
    }
    mu *= panel.annualization;
    sigma *= panel.annualization;
    try {
        return SampleEstimate(std::move(mu), CovMatrix(0.5 * (sigma + sigma.transpose())),
                              static_cast<double>(panel.n_dates()) / panel.periods_per_year);
    } catch (const NotPositiveDefiniteError& e) {
        throw DegenerateWindowError(std::string("regression design: ") + e.what());
    }
}

}  // namespace sric
