#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace thz {

/// Input outside the mathematical domain of a model operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The two-ray sine term vanishes: the model's received power is zero and the
/// dielectric path loss is undefined.
class TwoRayNullError : public DomainError {
public:
    TwoRayNullError(double sine_argument, double frequency_hz,
                    std::optional<std::size_t> subband = std::nullopt);

    double sine_argument() const noexcept { return argument_; }
    double frequency() const noexcept { return frequency_; }
    std::optional<std::size_t> subband() const noexcept { return subband_; }

private:
    double argument_;
    double frequency_;
    std::optional<std::size_t> subband_;
};

/// Small-antenna capacity approximation requested outside its validity regime.
class RegimeError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Malformed catalog record. Columns are 1-based and inclusive.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t first_column, std::size_t last_column,
               const std::string& what);

    std::size_t line() const noexcept { return line_; }
    std::size_t first_column() const noexcept { return first_; }
    std::size_t last_column() const noexcept { return last_; }

private:
    std::size_t line_;
    std::size_t first_;
    std::size_t last_;
};

/// One or more invariant violations found while validating an input document.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<std::string> violations);

    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

}  // namespace thz
