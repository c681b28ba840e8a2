#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace gkz {

using Rational = mpq_class;
using Integer = mpz_class;
using IntVector = std::vector<std::int64_t>;
using RationalVector = std::vector<Rational>;

enum class ErrorCode {
  NotIncreasing,
  GcdNotOne,
  TooShort,
  DimensionMismatch,
  NotInKernel,
  NotSmooth,
  IndexOutOfRange,
  BetaNotNatural,
  WrongAuxiliaryShape,
  InvalidWeight,
  SlopeTooSmall,
  WrongShape,
  UnsupportedShape,
  InsufficientData,
  NotCovered,
  Parse,
  TermLimit,
};

std::string_view error_name(ErrorCode code);

// Every domain error raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

Rational make_rational(std::int64_t num, std::int64_t den = 1);

// Accepts "p", "p/q", "-p/q" and decimal forms such as "1.5".
Rational parse_rational(std::string_view text);

// Canonical "p/q" form; integers print without a denominator.
std::string to_string(const Rational& q);

bool is_integer(const Rational& q);
bool is_natural(const Rational& q);
bool is_negative_integer(const Rational& q);
Integer floor(const Rational& q);
// q - floor(q), always in [0, 1).
Rational frac(const Rational& q);
std::int64_t to_int64(const Rational& q);

// (z)(z-1)...(z-k+1); empty product for k = 0.
Rational falling(const Rational& z, std::int64_t k);
Integer factorial(std::int64_t k);

// Natural logarithm of |q| for q != 0, safe for values far outside double range.
double log_abs(const Rational& q);

RationalVector to_rational(const IntVector& v);
std::string to_string(const RationalVector& v);
std::string to_string(const IntVector& v);

}  // namespace gkz
