#include "gkz/irregularity.hpp"

#include <cmath>
#include <functional>

#include <Eigen/Dense>

#include "gkz/exponents.hpp"
#include "gkz/series.hpp"

namespace gkz {

GevreyOrder GevreyOrder::of(const Rational& s) {
  if (s < 1) throw Error(ErrorCode::IndexOutOfRange, "Gevrey order must be at least 1");
  return {s};
}

Rational slope(const CurveMatrix& a) {
  return make_rational(a.last(), a.penultimate());
}

namespace {

DimensionAnswer value(std::int64_t v) { return {v}; }
const DimensionAnswer kNotCovered{};

}  // namespace

DimensionAnswer irregularity_dimension(const CurveMatrix& a, const Rational& beta, PointClass pt,
                                       const SheafTag& tag, std::int64_t ext_degree) {
  if (ext_degree < 0) throw Error(ErrorCode::IndexOutOfRange, "Ext degree must be nonnegative");
  const bool natural = is_natural(beta);
  const bool above = tag.order.at_least(slope(a));
  const std::int64_t p = a.penultimate();

  switch (tag.sheaf) {
    case Sheaf::GevreyQuotient:
      if (pt != PointClass::SmoothStratum || !above) return value(0);
      return value(ext_degree == 0 ? p : 0);

    case Sheaf::Holomorphic:
      if (pt == PointClass::GenericPoint)
        return ext_degree == 0 ? value(a.last()) : kNotCovered;
      if (!a.smooth()) return kNotCovered;
      if (!natural) return value(0);
      return value(ext_degree <= 1 ? 1 : 0);

    case Sheaf::GevreyFormal:
      if (pt == PointClass::GenericPoint || !a.smooth() || ext_degree >= 2) return kNotCovered;
      if (above) {
        if (ext_degree == 0) return value(pt == PointClass::SmoothStratum ? p : (natural ? 1 : 0));
        return value(pt == PointClass::DeepStratum && natural ? 1 : 0);
      }
      if (pt == PointClass::SmoothStratum) {
        if (ext_degree == 0) return value(natural ? 1 : 0);
        return natural ? value(1) : kNotCovered;
      }
      if (ext_degree == 1 && natural) return value(1);
      return kNotCovered;
  }
  return kNotCovered;
}

namespace {

std::string index_label(const char* stem, std::int64_t j) { return std::string(stem) + std::to_string(j); }

SolutionBasis smooth_stratum_basis(const CurveMatrix& a, const Rational& beta, const GevreyOrder& s,
                                   std::int64_t truncation) {
  const bool general = !a.smooth();
  const CurveMatrix base = general ? auxiliary_matrix(a) : a;
  const auto q = q_index(base, beta);
  auto finish = [&](FormalSeries f) { return general ? substitute_x0(f, a) : f; };

  SolutionBasis out;
  out.parameter = beta;
  if (!s.at_least(slope(a))) {
    if (general) throw Error(ErrorCode::NotCovered, "no basis below the slope for a_1 > 1");
    if (!q) throw Error(ErrorCode::SlopeTooSmall, "below the slope the space is zero for beta not natural");
    out.sheaf = {Sheaf::GevreyFormal, s};
    out.elements.push_back({index_label("phi_v", *q), build_phi_exponent(a, beta, *q, truncation), false});
    return out;
  }

  out.sheaf = {Sheaf::GevreyQuotient, s};
  if (q && base.size() < 3)
    throw Error(ErrorCode::UnsupportedShape, "the modified series needs at least three columns");
  for (std::int64_t j = 0; j < base.penultimate(); ++j) {
    if (q && j == *q) {
      out.elements.push_back({"phi_tilde", finish(build_phi_tilde(base, beta, truncation)), true});
      continue;
    }
    FormalSeries f = finish(build_phi_exponent(base, beta, j, truncation));
    if (f.terms.empty()) throw std::logic_error("basis series vanished after substitution");
    out.elements.push_back({index_label("phi_v", j), std::move(f), false});
  }
  return out;
}

SolutionBasis generic_point_basis(const CurveMatrix& a, const Rational& beta, std::int64_t truncation) {
  SolutionBasis out;
  out.sheaf = {Sheaf::Holomorphic, GevreyOrder::of(1)};
  out.parameter = beta;
  if (a.smooth()) {
    std::int64_t j = 0;
    for (const auto& e : generic_exponents(a, beta))
      out.elements.push_back({index_label("phi_w", j++), build_phi(a, e.v, truncation), false});
    return out;
  }

  const CurveMatrix aux = auxiliary_matrix(a);
  Rational param = beta;
  // For beta in N \ NA the polynomial series can vanish at x_0 = 0. The
  // contiguity operator d_1^t maps Sol(beta) isomorphically onto
  // Sol(beta - t a_1) for a negative parameter of the same class.
  if (is_natural(beta) && !SemigroupTable(a).contains(beta.get_num())) {
    const std::int64_t t = to_int64(beta) / a[0] + 1;
    IntVector w(a.size(), 0);
    w[0] = t;
    out.contiguity = w;
    param = beta - make_rational(t * a[0]);
  }
  out.parameter = param;
  std::int64_t j = 0;
  for (const auto& e : generic_exponents(aux, param)) {
    FormalSeries f = substitute_x0(build_phi(aux, e.v, truncation), a);
    if (f.terms.empty()) throw std::logic_error("generic basis series vanished after substitution");
    out.elements.push_back({index_label("phi_w", j++), std::move(f), false});
  }
  return out;
}

}  // namespace

SolutionBasis solution_basis(const CurveMatrix& a, const Rational& beta, PointClass pt,
                             const GevreyOrder& s, std::int64_t truncation) {
  SolutionBasis out;
  switch (pt) {
    case PointClass::GenericPoint:
      out = generic_point_basis(a, beta, truncation);
      break;
    case PointClass::SmoothStratum:
      out = smooth_stratum_basis(a, beta, s, truncation);
      break;
    case PointClass::DeepStratum:
      out.sheaf = {Sheaf::GevreyQuotient, s};
      out.parameter = beta;
      break;
  }
  DimensionAnswer expected = irregularity_dimension(a, beta, pt, out.sheaf, 0);
  if (expected.covered() && *expected.value != static_cast<std::int64_t>(out.elements.size()))
    throw std::logic_error("basis size disagrees with the dimension table");
  return out;
}

std::vector<Rational> monodromy_rotations(const CurveMatrix& a, const Rational& beta) {
  std::vector<Rational> out;
  const Rational p = make_rational(a.penultimate());
  for (std::int64_t k = 0; k < a.penultimate(); ++k) out.push_back(frac((beta - make_rational(k)) / p));
  return out;
}

std::vector<std::pair<IntVector, double>> rho_s_transform(const FormalSeries& s, const Rational& order,
                                                          std::size_t axis) {
  if (order < 1) throw Error(ErrorCode::IndexOutOfRange, "Gevrey order must be at least 1");
  if (axis >= s.variables()) throw Error(ErrorCode::IndexOutOfRange, "axis out of range");
  const double e = 1.0 - order.get_d();
  std::vector<std::pair<IntVector, double>> out;
  for (const auto& [u, c] : s.terms) {
    const double i = Rational(s.base[axis] + make_rational(u[axis])).get_d();
    const double scaled = std::exp(log_abs(c) + e * std::lgamma(i + 1.0));
    out.emplace_back(u, c < 0 ? -scaled : scaled);
  }
  return out;
}

CoefficientStream designated_subseries(const CurveMatrix& a, const Rational& beta,
                                       const Designated& which, std::int64_t count) {
  CoefficientStream out;
  const std::int64_t an = a.last(), p = a.penultimate();

  if (which.kind == Designated::Tilde) {
    if (!a.smooth() || a.size() < 3)
      throw Error(ErrorCode::UnsupportedShape, "the modified series needs a_1 = 1 and n >= 3");
    for (std::int64_t mu = 0; mu < count; ++mu) {
      Rational c = Rational(factorial(an * mu)) / Rational(factorial(p * mu));
      if ((an * mu) % 2) c = -c;
      out.exponents.push_back(p * mu);
      out.coefficients.push_back(c);
    }
    return out;
  }

  const CurveMatrix base = a.smooth() ? a : auxiliary_matrix(a);
  if (base.size() < 3) throw Error(ErrorCode::UnsupportedShape, "the ray needs n >= 3");
  const RationalVector v = exponent_vj(base, beta, which.j);
  const LatticeBasis basis = lattice_basis(base);
  const std::size_t r = basis.rank();
  IntVector lambda(r, 0);
  if (!a.smooth()) {
    // Start of the ray inside Delta_j: the lowest-level lattice point whose
    // x_0 exponent vanishes and which lies in N_v.
    bool found = false;
    for (std::int64_t lvl = 0; lvl <= 64 && !found; ++lvl) {
      IntVector m(r, 0);
      std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t k, std::int64_t left) {
        if (found) return;
        if (k + 1 == r) {
          for (std::int64_t sgn : {1, -1}) {
            m[k] = sgn * left;
            IntVector u = basis.combine(m);
            if (!found && v[0] + make_rational(u[0]) == 0 && in_support(v, u)) {
              lambda = m;
              found = true;
            }
            if (left == 0) break;
          }
          return;
        }
        for (std::int64_t x = -left; x <= left; ++x) {
          m[k] = x;
          rec(k + 1, left - std::abs(x));
        }
      };
      rec(0, lvl);
    }
    if (!found) throw Error(ErrorCode::NotCovered, "no start point for the designated subseries");
  }

  const std::size_t last = base.size() - 1;
  for (std::int64_t mu = 0; mu < count; ++mu) {
    IntVector m = lambda;
    m[r - 2] += an * mu;
    m[r - 1] += p * mu;
    IntVector u = basis.combine(m);
    out.exponents.push_back(u[last]);
    out.coefficients.push_back(gamma_coefficient(v, u));
  }
  return out;
}

CoefficientStream factorial_stream(std::int64_t count) {
  CoefficientStream out;
  for (std::int64_t k = 0; k < count; ++k) {
    out.exponents.push_back(k);
    out.coefficients.push_back(Rational(factorial(k)));
  }
  return out;
}

CoefficientStream inverse_factorial_stream(std::int64_t count) {
  CoefficientStream out = factorial_stream(count);
  for (auto& c : out.coefficients) c = 1 / c;
  return out;
}

double gevrey_index_estimate(const CoefficientStream& stream) {
  std::vector<std::pair<double, double>> pts;  // (k, log|c_k|)
  for (std::size_t i = 0; i < stream.coefficients.size(); ++i)
    if (stream.coefficients[i] != 0)
      pts.emplace_back(static_cast<double>(stream.exponents[i]), log_abs(stream.coefficients[i]));
  if (pts.size() < 16)
    throw Error(ErrorCode::InsufficientData, "need at least 16 nonzero coefficients");

  const std::size_t start = pts.size() / 2;
  const Eigen::Index rows = static_cast<Eigen::Index>(pts.size() - start);
  Eigen::MatrixXd x(rows, 3);
  Eigen::VectorXd y(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& [k, l] = pts[start + static_cast<std::size_t>(r)];
    x(r, 0) = std::lgamma(k + 1.0);
    x(r, 1) = k;
    x(r, 2) = 1.0;
    y(r) = l;
  }
  Eigen::Vector3d fit = x.colPivHouseholderQr().solve(y);
  return std::max(1.0, 1.0 + fit(0));
}

Figure1 repro_figure1(const CurveMatrix& a, const Rational& beta_special,
                      const Rational& beta_generic, const Rational& s) {
  if (!a.smooth()) throw Error(ErrorCode::NotSmooth, "the table is stated for a_1 = 1");
  if (!is_natural(beta_special)) throw Error(ErrorCode::BetaNotNatural, "special parameter must be natural");
  if (is_natural(beta_generic))
    throw Error(ErrorCode::BetaNotNatural, "generic parameter must not be natural");
  if (s < slope(a)) throw Error(ErrorCode::SlopeTooSmall, "the table is stated for s >= a_n/a_{n-1}");

  const std::int64_t p = a.penultimate();
  Figure1 f;
  f.row_labels = {"O special", "O generic", "O^(s) special", "O^(s) generic", "Q(s) special", "Q(s) generic"};
  f.column_labels = {"YnZ Ext0", "Y-Z Ext0", "YnZ Ext1", "Y-Z Ext1"};
  f.reference = {{1, 1, 1, 1}, {0, 0, 0, 0}, {1, p, 1, 0}, {0, p, 0, 0}, {0, p, 0, 0}, {0, p, 0, 0}};

  const GevreyOrder order = GevreyOrder::of(s);
  const Sheaf sheaves[] = {Sheaf::Holomorphic, Sheaf::GevreyFormal, Sheaf::GevreyQuotient};
  for (Sheaf sh : sheaves) {
    for (const Rational& beta : {beta_special, beta_generic}) {
      std::vector<std::int64_t> row;
      for (std::int64_t deg : {0, 1})
        for (PointClass pt : {PointClass::DeepStratum, PointClass::SmoothStratum}) {
          DimensionAnswer d = irregularity_dimension(a, beta, pt, {sh, order}, deg);
          row.push_back(d.covered() ? *d.value : -1);
        }
      f.computed.push_back(std::move(row));
    }
  }
  return f;
}

std::string to_string(PointClass pt) {
  switch (pt) {
    case PointClass::GenericPoint: return "generic";
    case PointClass::SmoothStratum: return "smooth";
    case PointClass::DeepStratum: return "deep";
  }
  return "?";
}

std::string to_string(const SheafTag& tag) {
  const std::string s = tag.order.s ? to_string(*tag.order.s) : "inf";
  switch (tag.sheaf) {
    case Sheaf::Holomorphic: return "O";
    case Sheaf::GevreyFormal: return "O^(" + s + ")";
    case Sheaf::GevreyQuotient: return "Q(" + s + ")";
  }
  return "?";
}

}  // namespace gkz
