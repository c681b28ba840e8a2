#include "gkz/formal_series.hpp"

#include <cstdlib>

namespace gkz {

std::size_t max_terms() {
  static const std::size_t cap = [] {
    const char* env = std::getenv("GKZ_MAX_TERMS");
    if (!env || !*env) return std::size_t{2000000};
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || v == 0) return std::size_t{2000000};
    return static_cast<std::size_t>(v);
  }();
  return cap;
}

Rational FormalSeries::coefficient(const IntVector& offset) const {
  auto it = terms.find(offset);
  return it == terms.end() ? Rational(0) : it->second;
}

void FormalSeries::add(const IntVector& offset, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms.try_emplace(offset, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
    return;
  }
  if (terms.size() > max_terms())
    throw Error(ErrorCode::TermLimit,
                "series exceeds " + std::to_string(max_terms()) + " terms (GKZ_MAX_TERMS)");
}

FormalSeries monomial_series(const RationalVector& exponent, const Rational& c) {
  FormalSeries s;
  s.base = exponent;
  s.add(IntVector(exponent.size(), 0), c);
  return s;
}

std::string to_string(const FormalSeries& s) {
  if (s.terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [u, c] : s.terms) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;

    std::string mono;
    for (std::size_t i = 0; i < u.size(); ++i) {
      Rational e = s.base[i] + make_rational(u[i]);
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i + 1);
      if (e != 1) {
        std::string t = to_string(e);
        mono += "^" + (is_integer(e) && e > 0 ? t : "(" + t + ")");
      }
    }
    if (mono.empty()) {
      out += to_string(mag);
    } else {
      if (mag != 1) out += to_string(mag) + "*";
      out += mono;
    }
  }
  return out;
}

}  // namespace gkz
