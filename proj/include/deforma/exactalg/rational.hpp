#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace deforma {

/// Exact rational scalar. GMP keeps values canonical (lowest terms, positive
/// denominator) after every arithmetic operation.
using Rational = mpq_class;

/// Error categories surfaced by the library; the CLI maps them to exit codes.
enum class ErrorKind {
  Validation,      // malformed input, type errors
  Mathematical,    // d^2 != 0, Jacobi failure, MC failure
  Truncation,      // a required component lies outside the truncation
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), kind_(kind), code_(std::move(code)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& code() const noexcept { return code_; }

private:
  ErrorKind kind_;
  std::string code_;
};

/// Parses `p`, `-p` or `p/q`. Anything that is not an exact integer ratio
/// (decimal points, exponents, whitespace inside, zero denominator) is rejected.
Rational parse_rational(std::string_view text);

/// Canonical rendering: `p` for integers, `p/q` otherwise.
std::string to_string(const Rational& r);

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

}  // namespace deforma
