#include "gkz/exponents.hpp"

#include <algorithm>

namespace gkz {

namespace {

void require_smooth(const CurveMatrix& a) {
  if (!a.smooth()) throw Error(ErrorCode::NotSmooth, "this construction needs a_1 = 1");
}

ExponentVector make_exponent(const CurveMatrix& a, RationalVector v, bool auxiliary) {
  ExponentVector e;
  e.nsupp = negative_support(v);
  e.minimal = has_minimal_negative_support(a, v, 1).answer;
  e.v = std::move(v);
  e.auxiliary = auxiliary;
  return e;
}

}  // namespace

bool valid_weight(const CurveMatrix& a, const WeightVector& w) {
  const std::size_t n = a.size();
  if (!a.smooth() || w.omega.size() != n) return false;
  const auto& om = w.omega;
  for (const auto& x : om)
    if (x <= 0) return false;
  for (std::size_t i = 1; i < n; ++i) {
    if (n >= 3 && i == n - 2) continue;
    if (!(om[i] > make_rational(a[i]) * om[0])) return false;
  }
  if (n >= 3) {
    if (!(make_rational(a.penultimate()) * om[0] > om[n - 2])) return false;
    for (std::size_t i = 0; i + 2 < n; ++i)
      if (!(om[n - 2] > om[i])) return false;
  }
  return true;
}

WeightVector standard_weight(const CurveMatrix& a) {
  require_smooth(a);
  const std::size_t n = a.size();
  WeightVector w;
  w.omega.assign(n, Rational(0));
  w.omega[0] = 1;
  const Rational third = make_rational(1, 3);
  for (std::size_t i = 1; i + 2 < n; ++i) w.omega[i] = make_rational(a[i]) + third;
  if (n >= 3) w.omega[n - 2] = make_rational(a.penultimate()) - third;
  w.omega[n - 1] = make_rational(a.last()) + 1;
  if (!valid_weight(a, w)) throw std::logic_error("standard weight fails its own conditions");
  return w;
}

std::vector<IntVector> initial_ideal_generators(const CurveMatrix& a, const WeightVector& w) {
  require_smooth(a);
  if (!valid_weight(a, w)) throw Error(ErrorCode::InvalidWeight, "weight violates the ordering conditions");
  const std::size_t n = a.size();
  std::vector<IntVector> out;
  for (std::size_t i = 1; i < n; ++i) {
    // in_omega(d_1^{a_i} - d_i) is the heavier of the two monomials.
    Rational left = make_rational(a[i]) * w.omega[0];
    if (left == w.omega[i]) throw Error(ErrorCode::InvalidWeight, "weight ties on a generator");
    IntVector e(n, 0);
    if (left > w.omega[i]) e[0] = a[i];
    else e[i] = 1;
    out.push_back(std::move(e));
  }
  // Expected shape: d_1^{a_{n-1}} from P_{1,n-1}, d_i for every other i.
  for (std::size_t i = 1; i < n; ++i) {
    const bool pen = n >= 3 && i == n - 2;
    if (pen != (out[i - 1][0] != 0)) throw std::logic_error("unexpected initial ideal shape");
  }
  return out;
}

std::vector<StandardPair> standard_pairs(const CurveMatrix& a) {
  require_smooth(a);
  const std::size_t n = a.size();
  std::vector<StandardPair> out;
  for (std::int64_t j = 0; j < a.penultimate(); ++j) {
    IntVector mono(n, 0);
    mono[0] = j;
    out.push_back({std::move(mono), {n - 2}});
  }
  return out;
}

std::vector<ExponentVector> singular_exponents(const CurveMatrix& a, const Rational& beta) {
  if (!a.smooth()) {
    auto out = singular_exponents(auxiliary_matrix(a), beta);
    for (auto& e : out) e.auxiliary = true;
    return out;
  }
  std::vector<ExponentVector> out;
  for (std::int64_t j = 0; j < a.penultimate(); ++j) {
    out.push_back(make_exponent(a, exponent_vj(a, beta, j), false));
    if (out.back().minimal != Tristate::True)
      throw std::logic_error("exponent without minimal negative support");
  }
  return out;
}

std::vector<ExponentVector> generic_exponents(const CurveMatrix& a, const Rational& beta) {
  if (!a.smooth()) {
    auto out = generic_exponents(auxiliary_matrix(a), beta);
    for (auto& e : out) e.auxiliary = true;
    return out;
  }
  const std::size_t n = a.size();
  std::vector<ExponentVector> out;
  for (std::int64_t j = 0; j < a.last(); ++j) {
    RationalVector v(n, Rational(0));
    v[0] = make_rational(j);
    v[n - 1] = (beta - make_rational(j)) / make_rational(a.last());
    out.push_back(make_exponent(a, std::move(v), false));
  }
  return out;
}

std::optional<std::int64_t> q_index(const CurveMatrix& a, const Rational& beta) {
  if (!is_natural(beta)) return std::nullopt;
  std::optional<std::int64_t> q;
  const Rational p = make_rational(a.penultimate());
  for (std::int64_t j = 0; j < a.penultimate(); ++j) {
    if (!is_natural((beta - make_rational(j)) / p)) continue;
    if (q) throw std::logic_error("q index is not unique");
    q = j;
  }
  return q;
}

}  // namespace gkz
