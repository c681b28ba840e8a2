#include "gkz/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>

namespace gkz {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotIncreasing: return "NotIncreasing";
    case ErrorCode::GcdNotOne: return "GcdNotOne";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotInKernel: return "NotInKernel";
    case ErrorCode::NotSmooth: return "NotSmooth";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::BetaNotNatural: return "BetaNotNatural";
    case ErrorCode::WrongAuxiliaryShape: return "WrongAuxiliaryShape";
    case ErrorCode::InvalidWeight: return "InvalidWeight";
    case ErrorCode::SlopeTooSmall: return "SlopeTooSmall";
    case ErrorCode::WrongShape: return "WrongShape";
    case ErrorCode::UnsupportedShape: return "UnsupportedShape";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::NotCovered: return "NotCovered";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::TermLimit: return "TermLimit";
  }
  return "Unknown";
}

Rational make_rational(std::int64_t num, std::int64_t den) {
  Rational q(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
  q.canonicalize();
  return q;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (s.empty()) throw Error(ErrorCode::Parse, "empty rational");

  auto check_digits = [&](const std::string& part, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && i < part.size() && (part[i] == '-' || part[i] == '+')) ++i;
    if (i == part.size()) throw Error(ErrorCode::Parse, "bad rational '" + s + "'");
    for (; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i])))
        throw Error(ErrorCode::Parse, "bad rational '" + s + "'");
  };

  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    check_digits(num, true);
    check_digits(den, false);
    if (num[0] == '+') num = num.substr(1);
    Integer d(den);
    if (d == 0) throw Error(ErrorCode::Parse, "zero denominator in '" + s + "'");
    Rational q(Integer(num), d);
    q.canonicalize();
    return q;
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot), part = s.substr(dot + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole = whole.substr(1);
    if (whole.empty()) whole = "0";
    if (part.empty()) part = "0";
    check_digits(whole, false);
    check_digits(part, false);
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, part.size());
    Rational q(Integer(whole) * den + Integer(part), den);
    q.canonicalize();
    return negative ? Rational(-q) : q;
  }
  check_digits(s, true);
  if (s[0] == '+') s = s.substr(1);
  return Rational(Integer(s));
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }
bool is_natural(const Rational& q) { return is_integer(q) && q >= 0; }
bool is_negative_integer(const Rational& q) { return is_integer(q) && q < 0; }

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rational frac(const Rational& q) { return q - Rational(floor(q)); }

std::int64_t to_int64(const Rational& q) {
  if (!is_integer(q) || !q.get_num().fits_slong_p())
    throw Error(ErrorCode::Parse, "value " + to_string(q) + " is not a machine integer");
  return q.get_num().get_si();
}

Rational falling(const Rational& z, std::int64_t k) {
  Rational out = 1;
  Rational t = z;
  for (std::int64_t j = 0; j < k; ++j) {
    if (t == 0) return 0;
    out *= t;
    t -= 1;
  }
  return out;
}

Integer factorial(std::int64_t k) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(k));
  return out;
}

namespace {
double log_abs_z(const Integer& z) {
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}
}  // namespace

double log_abs(const Rational& q) {
  if (q == 0) return -std::numeric_limits<double>::infinity();
  return log_abs_z(q.get_num()) - log_abs_z(q.get_den());
}

RationalVector to_rational(const IntVector& v) {
  RationalVector out;
  out.reserve(v.size());
  for (auto x : v) out.push_back(make_rational(x));
  return out;
}

std::string to_string(const RationalVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += to_string(v[i]);
  }
  return out + ")";
}

std::string to_string(const IntVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out + ")";
}

}  // namespace gkz
