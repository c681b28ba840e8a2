#include "gkz/weyl.hpp"

#include <algorithm>
#include <functional>

namespace gkz {

namespace {

void check_same(std::size_t a, std::size_t b) {
  if (a != b) throw Error(ErrorCode::DimensionMismatch, "operators act on different variable counts");
}

Integer binomial(std::int64_t n, std::int64_t k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

}  // namespace

WeylOperator WeylOperator::constant(std::size_t variables, const Rational& c) {
  WeylOperator p(variables);
  p.add_term(IntVector(variables, 0), IntVector(variables, 0), c);
  return p;
}

WeylOperator WeylOperator::x(std::size_t variables, std::size_t i) {
  IntVector alpha(variables, 0);
  alpha.at(i) = 1;
  return monomial(std::move(alpha), IntVector(variables, 0));
}

WeylOperator WeylOperator::d(std::size_t variables, std::size_t i) {
  IntVector gamma(variables, 0);
  gamma.at(i) = 1;
  return monomial(IntVector(variables, 0), std::move(gamma));
}

WeylOperator WeylOperator::monomial(IntVector alpha, IntVector gamma, const Rational& c) {
  check_same(alpha.size(), gamma.size());
  WeylOperator p(alpha.size());
  p.add_term(alpha, gamma, c);
  return p;
}

void WeylOperator::add_term(const IntVector& alpha, const IntVector& gamma, const Rational& c) {
  check_same(alpha.size(), n_);
  check_same(gamma.size(), n_);
  for (std::size_t i = 0; i < n_; ++i)
    if (alpha[i] < 0 || gamma[i] < 0)
      throw Error(ErrorCode::DimensionMismatch, "operator exponents must be nonnegative");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(Key{alpha, gamma}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

WeylOperator WeylOperator::operator+(const WeylOperator& o) const {
  check_same(n_, o.n_);
  WeylOperator out = *this;
  for (const auto& [k, c] : o.terms_) out.add_term(k.first, k.second, c);
  return out;
}

WeylOperator WeylOperator::operator-(const WeylOperator& o) const { return *this + o * Rational(-1); }

WeylOperator WeylOperator::operator*(const Rational& c) const {
  WeylOperator out(n_);
  for (const auto& [k, v] : terms_) out.add_term(k.first, k.second, v * c);
  return out;
}

WeylOperator op_multiply(const WeylOperator& p, const WeylOperator& q) {
  check_same(p.variables(), q.variables());
  const std::size_t n = p.variables();
  WeylOperator out(n);
  // d^gamma x^alpha' = sum_k prod_i C(gamma_i, k_i) (alpha'_i)_{k_i} x^{alpha'-k} d^{gamma-k}
  for (const auto& [pk, pc] : p.terms()) {
    const auto& [alpha, gamma] = pk;
    for (const auto& [qk, qc] : q.terms()) {
      const auto& [alpha2, gamma2] = qk;
      IntVector k(n, 0);
      std::function<void(std::size_t, Rational)> rec = [&](std::size_t i, Rational coef) {
        if (i == n) {
          IntVector a(n), g(n);
          for (std::size_t t = 0; t < n; ++t) {
            a[t] = alpha[t] + alpha2[t] - k[t];
            g[t] = gamma[t] + gamma2[t] - k[t];
          }
          out.add_term(a, g, coef);
          return;
        }
        const std::int64_t top = std::min(gamma[i], alpha2[i]);
        for (std::int64_t t = 0; t <= top; ++t) {
          k[i] = t;
          rec(i + 1, coef * Rational(binomial(gamma[i], t)) * falling(make_rational(alpha2[i]), t));
        }
        k[i] = 0;
      };
      rec(0, pc * qc);
    }
  }
  return out;
}

WeylOperator theta(std::size_t variables, std::size_t i) {
  IntVector e(variables, 0);
  e.at(i) = 1;
  return WeylOperator::monomial(e, e);
}

WeylOperator euler_operator(const CurveMatrix& a, const Rational& beta) {
  const std::size_t n = a.size();
  WeylOperator out = WeylOperator::constant(n, -beta);
  for (std::size_t i = 0; i < n; ++i) out = out + theta(n, i) * make_rational(a[i]);
  return out;
}

WeylOperator box_operator(const CurveMatrix& a, const IntVector& u) {
  if (u.size() != a.size()) throw Error(ErrorCode::DimensionMismatch, "lattice vector has wrong length");
  if (a.dot(u) != 0) throw Error(ErrorCode::NotInKernel, to_string(u) + " is not in ker(A)");
  const std::size_t n = u.size();
  IntVector plus(n, 0), minus(n, 0), zero(n, 0);
  for (std::size_t i = 0; i < n; ++i) (u[i] > 0 ? plus[i] : minus[i]) = std::abs(u[i]);
  WeylOperator out(n);
  out.add_term(zero, plus, 1);
  out.add_term(zero, minus, -1);
  return out;
}

std::vector<WeylOperator> toric_generators_smooth(const CurveMatrix& a) {
  if (!a.smooth()) throw Error(ErrorCode::NotSmooth, "toric generators need a_1 = 1");
  std::vector<WeylOperator> out;
  for (std::size_t i = 1; i < a.size(); ++i) {
    IntVector u(a.size(), 0);
    u[0] = a[i];
    u[i] = -1;
    out.push_back(box_operator(a, u));
  }
  return out;
}

std::vector<WeylOperator> lattice_box_operators(const CurveMatrix& a, std::int64_t radius) {
  LatticeBasis basis = lattice_basis(a);
  std::vector<WeylOperator> out;
  IntVector m(basis.rank(), 0);
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t k, std::int64_t left) {
    if (k == m.size()) {
      auto first = std::find_if(m.begin(), m.end(), [](std::int64_t v) { return v != 0; });
      if (first == m.end() || *first < 0) return;
      out.push_back(box_operator(a, basis.combine(m)));
      return;
    }
    for (std::int64_t v = -left; v <= left; ++v) {
      m[k] = v;
      rec(k + 1, left - std::abs(v));
    }
    m[k] = 0;
  };
  rec(0, radius);
  return out;
}

std::vector<WeylOperator> hypergeometric_generators(const CurveMatrix& a, const Rational& beta,
                                                    std::int64_t radius) {
  std::vector<WeylOperator> out;
  if (a.smooth()) {
    out = toric_generators_smooth(a);
  } else {
    for (const auto& row : lattice_basis(a).rows) out.push_back(box_operator(a, row));
  }
  out.push_back(euler_operator(a, beta));
  for (auto& p : lattice_box_operators(a, radius)) out.push_back(std::move(p));
  return out;
}

std::string to_string(const WeylOperator& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  // Highest total order first; within one order, x_1 and d_1 lead.
  using Entry = std::pair<std::pair<IntVector, IntVector>, Rational>;
  std::vector<Entry> entries(p.terms().begin(), p.terms().end());
  auto order = [](const Entry& e) {
    std::int64_t s = 0;
    for (auto x : e.first.first) s += x;
    for (auto x : e.first.second) s += x;
    return s;
  };
  std::stable_sort(entries.begin(), entries.end(), [&](const Entry& l, const Entry& r) {
    const auto ol = order(l), or_ = order(r);
    if (ol != or_) return ol > or_;
    if (l.first.second != r.first.second) return l.first.second > r.first.second;
    return l.first.first > r.first.first;
  });
  for (const auto& [key, c] : entries) {
    const auto& [alpha, gamma] = key;
    Rational mag = abs(c);
    out += first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
    first = false;
    std::string mono;
    auto factor = [&](const char* sym, std::size_t i, std::int64_t e) {
      if (e == 0) return;
      if (!mono.empty()) mono += "*";
      mono += sym + std::to_string(i + 1);
      if (e != 1) mono += "^" + std::to_string(e);
    };
    for (std::size_t i = 0; i < alpha.size(); ++i) factor("x", i, alpha[i]);
    for (std::size_t i = 0; i < gamma.size(); ++i) factor("d", i, gamma[i]);
    if (mono.empty()) out += to_string(mag);
    else out += (mag != 1 ? to_string(mag) + "*" : "") + mono;
  }
  return out;
}

bool AppliedSupport::exact(const IntVector& offset) const {
  IntVector q(offset.size());
  for (const auto& shift : shifts_) {
    for (std::size_t i = 0; i < q.size(); ++i) q[i] = offset[i] + shift[i];
    if (!parent_->exact(q)) return false;
  }
  return true;
}

namespace {

// Output coefficients of P(S) keyed by offset, including cancelled zeros so
// callers can see which positions were reached.
std::map<IntVector, Rational> apply_raw(const WeylOperator& p, const FormalSeries& s) {
  check_same(p.variables(), s.variables());
  const std::size_t n = s.variables();
  std::map<IntVector, Rational> out;
  IntVector o(n);
  for (const auto& [u, c] : s.terms) {
    for (const auto& [key, pc] : p.terms()) {
      const auto& [alpha, gamma] = key;
      Rational f = pc * c;
      for (std::size_t i = 0; i < n && f != 0; ++i)
        if (gamma[i]) f *= falling(s.base[i] + make_rational(u[i]), gamma[i]);
      for (std::size_t i = 0; i < n; ++i) o[i] = u[i] - gamma[i] + alpha[i];
      out[o] += f;
    }
  }
  return out;
}

std::vector<IntVector> shifts_of(const WeylOperator& p) {
  std::vector<IntVector> out;
  for (const auto& [key, c] : p.terms()) {
    IntVector sh(key.first.size());
    for (std::size_t i = 0; i < sh.size(); ++i) sh[i] = key.second[i] - key.first[i];
    out.push_back(std::move(sh));
  }
  return out;
}

}  // namespace

FormalSeries apply(const WeylOperator& p, const FormalSeries& s) {
  FormalSeries out;
  out.base = s.base;
  out.truncation = s.truncation;
  out.support = std::make_shared<AppliedSupport>(s.support, shifts_of(p));
  for (auto& [o, c] : apply_raw(p, s))
    if (c != 0) out.add(o, c);
  return out;
}

std::size_t AnnihilationReport::checked() const {
  std::size_t total = 0;
  for (const auto& g : per_generator) total += g.checked;
  return total;
}

AnnihilationReport annihilation_report(const std::vector<WeylOperator>& gens,
                                       const FormalSeries& s) {
  AnnihilationReport report;
  report.max_violation = 0;
  for (const auto& p : gens) {
    GeneratorReport g;
    g.op = to_string(p);
    g.max_violation = 0;
    AppliedSupport window(s.support, shifts_of(p));
    for (const auto& [o, c] : apply_raw(p, s)) {
      if (!window.exact(o)) {
        ++g.skipped;
        continue;
      }
      ++g.checked;
      g.max_violation = std::max<Rational>(g.max_violation, abs(c));
    }
    report.max_violation = std::max<Rational>(report.max_violation, g.max_violation);
    report.per_generator.push_back(std::move(g));
  }
  return report;
}

}  // namespace gkz
