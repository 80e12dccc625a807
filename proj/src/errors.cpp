#include "thz/errors.hpp"

#include <fmt/format.h>

namespace thz {

namespace {

std::string null_message(double argument, double frequency, std::optional<std::size_t> subband) {
    auto msg = fmt::format("two-ray null at f = {:.6e} Hz (sine argument {:.12g} rad)", frequency,
                           argument);
    if (subband) msg += fmt::format(" in subband {}", *subband);
    return msg;
}

std::string join_violations(const std::vector<std::string>& v) {
    std::string out = "invalid input:";
    for (const auto& s : v) out += "\n  - " + s;
    return out;
}

}  // namespace

TwoRayNullError::TwoRayNullError(double sine_argument, double frequency_hz,
                                 std::optional<std::size_t> subband)
    : DomainError(null_message(sine_argument, frequency_hz, subband)),
      argument_(sine_argument),
      frequency_(frequency_hz),
      subband_(subband) {}

ParseError::ParseError(std::size_t line, std::size_t first_column, std::size_t last_column,
                       const std::string& what)
    : std::runtime_error(
          fmt::format("line {}, columns {}-{}: {}", line, first_column, last_column, what)),
      line_(line),
      first_(first_column),
      last_(last_column) {}

ValidationError::ValidationError(std::vector<std::string> violations)
    : std::runtime_error(join_violations(violations)), violations_(std::move(violations)) {}

}  // namespace thz
