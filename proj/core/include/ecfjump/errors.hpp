#pragma once

#include <stdexcept>
#include <string>

namespace ecf {

// Error taxonomy shared by the library and the CLI. `data` class errors map to
// CLI exit code 2, `degenerate` class errors to exit code 3.
enum class Errc {
  invalid_argument,
  too_few_observations,
  non_finite_input,
  data_format,
  non_positive_price,
  degenerate_split,
  zero_delta,
  degenerate_zero_curve,
  negative_variance,
  no_root_bracket,
  unsupported_parameter,
  zero_power_variation,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::too_few_observations: return "too-few-observations";
    case Errc::non_finite_input: return "non-finite-input";
    case Errc::data_format: return "data-format";
    case Errc::non_positive_price: return "non-positive-price";
    case Errc::degenerate_split: return "degenerate-split";
    case Errc::zero_delta: return "zero-delta";
    case Errc::degenerate_zero_curve: return "degenerate-zero-curve";
    case Errc::negative_variance: return "negative-variance";
    case Errc::no_root_bracket: return "no-root-bracket";
    case Errc::unsupported_parameter: return "unsupported-parameter";
    case Errc::zero_power_variation: return "zero-power-variation";
  }
  return "unknown";
}

// True for error classes caused by malformed or insufficient input data.
inline bool is_data_error(Errc c) {
  switch (c) {
    case Errc::too_few_observations:
    case Errc::non_finite_input:
    case Errc::data_format:
    case Errc::non_positive_price:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace ecf
