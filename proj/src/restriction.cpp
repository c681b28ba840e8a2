#include "gkz/restriction.hpp"

#include <numeric>

namespace gkz {

ModuleDescriptor restrict_hyperplane(const CurveMatrix& a, const Rational& beta, std::size_t column) {
  if (!a.smooth()) throw Error(ErrorCode::NotSmooth, "hyperplane restriction is stated for a_1 = 1");
  if (column == 0 || column >= a.size() || a.size() < 3)
    throw Error(ErrorCode::IndexOutOfRange, "column must be one of 2..n and n >= 3");
  return {drop_column(a, column), beta, Caveat::ProvenForThisBeta};
}

namespace {

std::vector<ModuleDescriptor> split(std::int64_t p, std::int64_t q, const Rational& beta) {
  const std::int64_t k = std::gcd(p, q);
  CurveMatrix m = make_curve({p / k, q / k});
  std::vector<ModuleDescriptor> out;
  for (std::int64_t i = 0; i < k; ++i)
    out.push_back({m, (beta - make_rational(i)) / make_rational(k), Caveat::GenericBetaOnly});
  return out;
}

}  // namespace

std::vector<ModuleDescriptor> restrict_x1_split(const CurveMatrix& a, const Rational& beta) {
  if (a.size() != 3 || !a.smooth())
    throw Error(ErrorCode::WrongShape, "expected a matrix of shape (1, ka, kb)");
  return split(a[1], a[2], beta);
}

std::vector<ModuleDescriptor> restrict_to_plane(const CurveMatrix& a, const Rational& beta) {
  if (!a.smooth()) throw Error(ErrorCode::NotSmooth, "plane restriction is stated for a_1 = 1");
  if (a.size() < 3) throw Error(ErrorCode::UnsupportedShape, "plane restriction needs n >= 3");
  return split(a.penultimate(), a.last(), beta);
}

AuxiliaryRestriction restrict_aux(const CurveMatrix& a, const Rational& beta) {
  CurveMatrix aux = auxiliary_matrix(a);
  const std::size_t n = aux.size();
  AuxiliaryRestriction out{{a, beta, Caveat::GenericBetaOnly}, aux, delta_exponents(a), {}, WeylOperator(n)};
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& d = out.deltas[i];
    IntVector u(n, 0);
    u[0] = 1;
    u[i + 1] = d.delta;
    for (std::size_t k = 0, col = 0; col < a.size(); ++col) {
      if (col == i) continue;
      u[col + 1] -= d.rho[k++];
    }
    out.q.push_back(box_operator(aux, u));
  }
  IntVector p1(n, 0);
  p1[0] = a[0];
  p1[1] = -1;
  out.p1 = box_operator(aux, p1);
  return out;
}

BFunction b_function(const CurveMatrix& a, const WeightTag& w) {
  if (!a.smooth()) throw Error(ErrorCode::UnsupportedShape, "closed-form b-functions need a_1 = 1");
  BFunction out;
  if (w.kind == WeightTag::StandardBasis) {
    if (w.index == 0 || w.index >= a.size())
      throw Error(ErrorCode::UnsupportedShape, "unit weight must select one of columns 2..n");
    out.roots = {Rational(0)};
    return out;
  }
  if (a.size() < 3 || a[1] == 1)
    throw Error(ErrorCode::UnsupportedShape, "first-coordinate weight needs (1, a_1, ..., a_n) with a_1 > 1");
  if (a.size() == 3) {
    const std::int64_t k = std::gcd(a[1], a[2]);
    for (std::int64_t i = 0; i < k; ++i) out.roots.push_back(make_rational(i));
    if (k > 1) out.caveat = Caveat::GenericBetaOnly;
    return out;
  }
  std::int64_t g = 0;
  for (std::size_t c = 1; c < a.size(); ++c) g = std::gcd(g, a[c]);
  if (g != 1) throw Error(ErrorCode::UnsupportedShape, "first-coordinate weight: trailing entries must have gcd 1");
  out.roots = {Rational(0)};
  return out;
}

std::int64_t generic_rank(const CurveMatrix& a) { return a.last(); }

std::string to_string(Caveat c) {
  return c == Caveat::GenericBetaOnly ? "GenericBetaOnly" : "ProvenForThisBeta";
}

}  // namespace gkz
