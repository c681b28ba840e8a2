#include "gkz/series.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace gkz {

std::set<std::size_t> negative_support(const RationalVector& v) {
  std::set<std::size_t> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (is_negative_integer(v[i])) out.insert(i);
  return out;
}

bool in_support(const RationalVector& v, const IntVector& u) {
  if (v.size() != u.size()) throw Error(ErrorCode::DimensionMismatch, "offset has wrong length");
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!is_integer(v[i])) continue;
    const bool before = v[i] < 0;
    const bool after = v[i] + make_rational(u[i]) < 0;
    if (before != after) return false;
  }
  return true;
}

Rational gamma_coefficient(const RationalVector& v, const IntVector& u) {
  if (!in_support(v, u)) return 0;
  Rational num = 1, den = 1;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (u[i] < 0) num *= falling(v[i], -u[i]);
    else if (u[i] > 0) den *= falling(v[i] + make_rational(u[i]), u[i]);
  }
  if (den == 0) throw std::logic_error("pole inside N_v");
  return num / den;
}

namespace {

// Calls f(m) for every m in Z^rank with sum |m_k| <= radius.
void for_each_in_l1_ball(std::size_t rank, std::int64_t radius,
                         const std::function<void(const IntVector&)>& f) {
  IntVector m(rank, 0);
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t k, std::int64_t left) {
    if (k == rank) {
      f(m);
      return;
    }
    for (std::int64_t v = -left; v <= left; ++v) {
      m[k] = v;
      rec(k + 1, left - std::abs(v));
    }
    m[k] = 0;
  };
  rec(0, radius);
}

std::int64_t level(const IntVector& m) {
  std::int64_t s = 0;
  for (auto x : m) s += std::abs(x);
  return s;
}

std::string entries_text(const IntVector& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

bool proper_subset(const std::set<std::size_t>& a, const std::set<std::size_t>& b) {
  return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

MinimalityResult has_minimal_negative_support(const CurveMatrix& a, const RationalVector& v,
                                              std::int64_t radius) {
  if (v.size() != a.size()) throw Error(ErrorCode::DimensionMismatch, "exponent has wrong length");
  const auto nsupp = negative_support(v);
  if (nsupp.empty()) return {Tristate::True, std::nullopt};

  LatticeBasis basis = lattice_basis(a);
  std::vector<IntVector> box;
  IntVector m(basis.rank(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == m.size()) {
      if (level(m) > 0) box.push_back(m);
      return;
    }
    for (std::int64_t x = -radius; x <= radius; ++x) {
      m[k] = x;
      rec(k + 1);
    }
  };
  rec(0);
  std::stable_sort(box.begin(), box.end(),
                   [](const IntVector& p, const IntVector& q) { return level(p) < level(q); });
  for (const auto& mm : box) {
    IntVector u = basis.combine(mm);
    RationalVector w = v;
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += make_rational(u[i]);
    if (proper_subset(negative_support(w), nsupp)) return {Tristate::False, u};
  }

  // Exact criterion. A non-integer coordinate or a second negative index
  // leaves a coordinate free of sign constraints, and gcd(A) = 1 then always
  // produces a witness. Otherwise a witness is a decomposition of A.v in NA.
  const bool all_integer = std::all_of(v.begin(), v.end(), [](const Rational& x) { return is_integer(x); });
  if (nsupp.size() == 1 && all_integer) {
    Rational weight = a.dot(v);
    if (!SemigroupTable(a).contains(weight.get_num())) return {Tristate::True, std::nullopt};
  }
  return {Tristate::False, std::nullopt};
}

LatticeSupport::LatticeSupport(CurveMatrix a, RationalVector base, std::int64_t truncation)
    : a_(std::move(a)), basis_(lattice_basis(a_)), base_(std::move(base)), truncation_(truncation) {}

bool LatticeSupport::exact(const IntVector& offset) const {
  auto m = lattice_decompose(basis_, offset);
  if (!m) return true;
  if (!in_support(base_, offset)) return true;
  return level(*m) <= truncation_;
}

std::string LatticeSupport::descriptor() const {
  return "gamma-lattice[" + entries_text(a_.entries()) + "]";
}

bool X0RestrictedSupport::exact(const IntVector& offset) const {
  IntVector full;
  full.reserve(offset.size() + 1);
  full.push_back(-v0_);
  full.insert(full.end(), offset.begin(), offset.end());
  return parent_->exact(full);
}

std::string X0RestrictedSupport::descriptor() const {
  return "x0-restricted[v0=" + std::to_string(v0_) + "]:" + parent_->descriptor();
}

FormalSeries build_phi(const CurveMatrix& a, const RationalVector& v, std::int64_t truncation) {
  if (v.size() != a.size()) throw Error(ErrorCode::DimensionMismatch, "exponent has wrong length");
  if (truncation < 0) throw Error(ErrorCode::IndexOutOfRange, "truncation must be nonnegative");
  LatticeBasis basis = lattice_basis(a);
  FormalSeries s;
  s.base = v;
  s.truncation = truncation;
  s.parameter = a.dot(v);
  s.support = std::make_shared<LatticeSupport>(a, v, truncation);
  for_each_in_l1_ball(basis.rank(), truncation, [&](const IntVector& m) {
    IntVector u = basis.combine(m);
    if (in_support(v, u)) s.add(u, gamma_coefficient(v, u));
  });
  return s;
}

RationalVector exponent_vj(const CurveMatrix& a, const Rational& beta, std::int64_t j) {
  if (!a.smooth()) throw Error(ErrorCode::NotSmooth, "exponents v^j need a_1 = 1");
  const std::int64_t p = a.penultimate();
  if (j < 0 || j >= p) throw Error(ErrorCode::IndexOutOfRange, "j must lie in 0..a_{n-1}-1");
  const std::size_t n = a.size();
  RationalVector v(n, Rational(0));
  v[n - 2] = (beta - make_rational(j)) / make_rational(p);
  // For n = 2 the slots coincide and a_{n-1} = 1 forces j = 0.
  if (n > 2) v[0] = make_rational(j);
  return v;
}

FormalSeries build_phi_exponent(const CurveMatrix& a, const Rational& beta, std::int64_t j,
                                std::int64_t truncation) {
  RationalVector v = exponent_vj(a, beta, j);
  if (has_minimal_negative_support(a, v, 1).answer != Tristate::True)
    throw std::logic_error("exponent " + to_string(v) + " lacks minimal negative support");
  FormalSeries s = build_phi(a, v, truncation);

  const std::size_t n = a.size();
  if (n > 2) {
    // Gamma[v^j; u(m)] = (v_{n-1})_{m_{n-1}} j! /
    //   (prod_{i != 1,n-1} m_i! * (j - sum_{i != 1,n-1} a_i m_i + a_{n-1} m_{n-1})!)
    LatticeBasis basis = lattice_basis(a);
    for (const auto& [u, c] : s.terms) {
      IntVector m = *lattice_decompose(basis, u);
      Rational expect = falling(v[n - 2], m[n - 3]) * Rational(factorial(j));
      std::int64_t x1 = j;
      for (std::size_t k = 0; k < m.size(); ++k) {
        const std::size_t col = k + 1;
        if (col == n - 2) {
          x1 += a[col] * m[k];
        } else {
          x1 -= a[col] * m[k];
          expect /= Rational(factorial(m[k]));
        }
      }
      expect /= Rational(factorial(x1));
      if (expect != c) throw std::logic_error("coefficient formula mismatch at " + to_string(u));
    }
  }
  return s;
}

RationalVector tilde_exponent(const CurveMatrix& a, const Rational& beta) {
  const std::size_t n = a.size();
  RationalVector v(n, Rational(0));
  v[0] = beta + make_rational(a.penultimate());
  v[n - 2] = -1;
  return v;
}

namespace {

void check_tilde_input(const CurveMatrix& a, const Rational& beta) {
  if (!a.smooth()) throw Error(ErrorCode::NotSmooth, "the modified series needs a_1 = 1");
  if (a.size() < 3) throw Error(ErrorCode::UnsupportedShape, "the modified series needs n >= 3");
  if (!is_natural(beta)) throw Error(ErrorCode::BetaNotNatural, "beta must be a natural number");
}

}  // namespace

FormalSeries build_phi_tilde(const CurveMatrix& a, const Rational& beta, std::int64_t truncation) {
  check_tilde_input(a, beta);
  return build_phi(a, tilde_exponent(a, beta), truncation);
}

WeylOperator p_n1_operator(const CurveMatrix& a) {
  if (!a.smooth()) throw Error(ErrorCode::NotSmooth, "P_{n-1} is defined for a_1 = 1");
  IntVector u(a.size(), 0);
  u[0] = a.penultimate();
  u[a.size() - 2] = -1;
  return box_operator(a, u);
}

FormalSeries p_n1_closed_form(const CurveMatrix& a, const Rational& beta) {
  check_tilde_input(a, beta);
  const std::size_t n = a.size();
  const std::int64_t b = to_int64(beta);
  const std::int64_t p = a.penultimate();
  FormalSeries s;
  s.base = tilde_exponent(a, beta);
  s.parameter = beta;
  const Rational top(factorial(b + p));

  std::vector<std::size_t> cols;
  for (std::size_t c = 1; c < n; ++c)
    if (c != n - 2) cols.push_back(c);
  IntVector offset(n, 0);
  std::function<void(std::size_t, std::int64_t, Rational)> rec = [&](std::size_t k, std::int64_t sum,
                                                                     Rational denom) {
    if (k == cols.size()) {
      offset[0] = -sum - p;
      s.add(offset, top / (denom * Rational(factorial(b - sum))));
      return;
    }
    const std::size_t c = cols[k];
    for (std::int64_t mi = 0; sum + a[c] * mi <= b; ++mi) {
      offset[c] = mi;
      rec(k + 1, sum + a[c] * mi, denom * Rational(factorial(mi)));
    }
    offset[c] = 0;
  };
  rec(0, 0, Rational(1));
  return s;
}

FormalSeries substitute_x0(const FormalSeries& s, const CurveMatrix& a) {
  if (a.smooth())
    throw Error(ErrorCode::WrongAuxiliaryShape, "substitution targets a curve with a_1 > 1");
  if (s.variables() != a.size() + 1)
    throw Error(ErrorCode::WrongAuxiliaryShape, "series is not over the auxiliary matrix");
  if (auto lat = std::dynamic_pointer_cast<const LatticeSupport>(s.support))
    if (!(lat->matrix() == auxiliary_matrix(a)))
      throw Error(ErrorCode::WrongAuxiliaryShape, "series is not over the auxiliary matrix");

  FormalSeries out;
  out.base.assign(s.base.begin() + 1, s.base.end());
  out.truncation = s.truncation;
  out.parameter = s.parameter;
  if (!is_integer(s.base[0])) {
    // No term can have x_0 exponent zero.
    out.support = std::make_shared<FiniteSupport>();
    return out;
  }
  const std::int64_t v0 = to_int64(s.base[0]);
  out.support = std::make_shared<X0RestrictedSupport>(s.support, v0);
  for (const auto& [u, c] : s.terms)
    if (u[0] == -v0) out.add(IntVector(u.begin() + 1, u.end()), c);
  return out;
}

FormalSeries apply_contiguity(const FormalSeries& s, const IntVector& w, const CurveMatrix& a) {
  if (w.size() != a.size() || s.variables() != a.size())
    throw Error(ErrorCode::DimensionMismatch, "contiguity vector has wrong length");
  for (auto x : w)
    if (x < 0) throw Error(ErrorCode::DimensionMismatch, "contiguity vector must be natural");
  FormalSeries out = apply(WeylOperator::monomial(IntVector(w.size(), 0), w), s);
  if (s.parameter) out.parameter = *s.parameter - make_rational(a.dot(w));
  return out;
}

nlohmann::json to_json(const FormalSeries& s) {
  nlohmann::json j;
  j["base_exponent"] = nlohmann::json::array();
  for (const auto& x : s.base) j["base_exponent"].push_back(to_string(x));
  j["terms"] = nlohmann::json::array();
  for (const auto& [u, c] : s.terms) j["terms"].push_back({{"offset", u}, {"coeff", to_string(c)}});
  j["truncation"] = s.truncation;
  j["descriptor"] = s.descriptor();
  if (s.parameter) j["parameter"] = to_string(*s.parameter);
  return j;
}

namespace {

std::shared_ptr<const Support> support_from(const std::string& desc, const RationalVector& base,
                                            std::int64_t truncation) {
  if (desc == "finite") return std::make_shared<FiniteSupport>();
  const std::string lattice = "gamma-lattice[";
  if (desc.rfind(lattice, 0) == 0 && desc.back() == ']') {
    IntVector entries;
    std::stringstream in(desc.substr(lattice.size(), desc.size() - lattice.size() - 1));
    std::string item;
    while (std::getline(in, item, ',')) entries.push_back(to_int64(parse_rational(item)));
    CurveMatrix a = make_curve(entries);
    if (a.size() != base.size())
      throw Error(ErrorCode::DimensionMismatch, "descriptor matrix does not match base exponent");
    return std::make_shared<LatticeSupport>(a, base, truncation);
  }
  const std::string restricted = "x0-restricted[v0=";
  if (desc.rfind(restricted, 0) == 0) {
    auto close = desc.find("]:");
    if (close == std::string::npos) throw Error(ErrorCode::Parse, "bad descriptor '" + desc + "'");
    const std::int64_t v0 = to_int64(parse_rational(desc.substr(restricted.size(), close - restricted.size())));
    RationalVector parent_base{make_rational(v0)};
    parent_base.insert(parent_base.end(), base.begin(), base.end());
    return std::make_shared<X0RestrictedSupport>(support_from(desc.substr(close + 2), parent_base, truncation), v0);
  }
  return std::make_shared<OpaqueSupport>();
}

}  // namespace

FormalSeries series_from_json(const nlohmann::json& j) {
  try {
    FormalSeries s;
    for (const auto& x : j.at("base_exponent")) s.base.push_back(parse_rational(x.get<std::string>()));
    s.truncation = j.at("truncation").get<std::int64_t>();
    for (const auto& t : j.at("terms")) {
      IntVector u = t.at("offset").get<IntVector>();
      if (u.size() != s.base.size())
        throw Error(ErrorCode::DimensionMismatch, "term offset has wrong length");
      s.add(u, parse_rational(t.at("coeff").get<std::string>()));
    }
    if (j.contains("parameter")) s.parameter = parse_rational(j["parameter"].get<std::string>());
    s.support = support_from(j.value("descriptor", std::string("opaque")), s.base, s.truncation);
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("malformed series JSON: ") + e.what());
  }
}

}  // namespace gkz
