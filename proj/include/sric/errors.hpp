#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace sric {

/// Base of every error the library raises.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

/// Covariance failed the symmetry or positive-definiteness check.
class NotPositiveDefiniteError : public Error {
public:
    using Error::Error;
};

/// Estimated mean is the zero vector; the in-sample Sharpe is undefined on the ray.
class DegenerateEstimateError : public Error {
public:
    using Error::Error;
};

/// True mean is zero; only the null-regime quantities exist.
class DegeneratePopulationError : public Error {
public:
    using Error::Error;
};

class BasisRankError : public Error {
public:
    using Error::Error;
};

class EmptyFamilyError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

    /// Same error with "file: " in front of the message.
    ParseError in_file(const std::string& file) const { return ParseError(file + ": " + what(), line_, 0); }

private:
    ParseError(const std::string& full_message, std::size_t line, int) : Error(full_message), line_(line) {}

    std::size_t line_;
};

class EmptyDataError : public Error {
public:
    using Error::Error;
};

class AlignmentError : public Error {
public:
    using Error::Error;
};

class DegenerateWindowError : public Error {
public:
    using Error::Error;
};

/// Configuration rejected; carries every offending field, not just the first.
class ConfigError : public Error {
public:
    explicit ConfigError(std::vector<std::string> problems)
        : Error(join(problems)), problems_(std::move(problems)) {}

    const std::vector<std::string>& problems() const noexcept { return problems_; }

private:
    static std::string join(const std::vector<std::string>& items) {
        std::string out;
        for (const auto& item : items) {
            if (!out.empty()) out += "; ";
            out += item;
        }
        return out;
    }

    std::vector<std::string> problems_;
};

}  // namespace sric
