#pragma once

// Gamma-series phi_v = x^v sum_{u in L_A} Gamma[v;u] x^u and the series
// derived from them: the modified series for natural beta, the x_0 = 0
// substitution for general curves, and contiguity maps.

#include <optional>
#include <set>
#include <string>

#include "json.hpp"

#include "gkz/curve.hpp"
#include "gkz/formal_series.hpp"
#include "gkz/weyl.hpp"

namespace gkz {

// Indices i with v_i a negative integer.
std::set<std::size_t> negative_support(const RationalVector& v);

enum class Tristate { True, False, Unknown };

struct MinimalityResult {
  Tristate answer;
  std::optional<IntVector> witness;  // u with nsupp(v+u) a proper subset of nsupp(v)
};

// Searches lattice vectors with coordinate max-norm <= radius for a witness.
// Without one, an exact criterion decides: a nonempty nsupp(v) is minimal
// iff it is a single index, every v_i is an integer and A.v lies outside NA.
MinimalityResult has_minimal_negative_support(const CurveMatrix& a, const RationalVector& v,
                                              std::int64_t radius);

// u in N_v: nsupp(v+u) = nsupp(v).
bool in_support(const RationalVector& v, const IntVector& u);

// Gamma[v;u] = (v)_{u-} / (v+u)_{u+} on N_v, zero elsewhere.
Rational gamma_coefficient(const RationalVector& v, const IntVector& u);

// The window of phi_v truncated at lattice level N. Offsets outside L_A or
// N_v are exact zeros; inside, offsets of level sum |m_k| <= N are stored.
class LatticeSupport final : public Support {
 public:
  LatticeSupport(CurveMatrix a, RationalVector base, std::int64_t truncation);
  bool exact(const IntVector& offset) const override;
  std::string descriptor() const override;
  const CurveMatrix& matrix() const { return a_; }

 private:
  CurveMatrix a_;
  LatticeBasis basis_;
  RationalVector base_;
  std::int64_t truncation_;
};

// x_0-restriction window: offset o is exact when (-v0, o) is exact in the
// series over the auxiliary matrix.
class X0RestrictedSupport final : public Support {
 public:
  X0RestrictedSupport(std::shared_ptr<const Support> parent, std::int64_t v0)
      : parent_(std::move(parent)), v0_(v0) {}
  bool exact(const IntVector& offset) const override;
  std::string descriptor() const override;

 private:
  std::shared_ptr<const Support> parent_;
  std::int64_t v0_;
};

// phi_v over every lattice point of level <= N in N_v.
FormalSeries build_phi(const CurveMatrix& a, const RationalVector& v, std::int64_t truncation);

// v^j = (j, 0, ..., (beta - j)/a_{n-1}, 0) for smooth A.
RationalVector exponent_vj(const CurveMatrix& a, const Rational& beta, std::int64_t j);

// phi_{v^j}, with every coefficient checked against the product formula in
// the basis coordinates. Throws NotSmooth, IndexOutOfRange.
FormalSeries build_phi_exponent(const CurveMatrix& a, const Rational& beta, std::int64_t j,
                                std::int64_t truncation);

// Base exponent (beta + a_{n-1}, 0, ..., 0, -1, 0) of the modified series.
RationalVector tilde_exponent(const CurveMatrix& a, const Rational& beta);

// Modified series for natural beta. It is not annihilated by
// P_{n-1} = d_1^{a_{n-1}} - d_{n-1}. Throws BetaNotNatural, UnsupportedShape (n = 2).
FormalSeries build_phi_tilde(const CurveMatrix& a, const Rational& beta, std::int64_t truncation);

// The finite sum P_{n-1}(phi_tilde): with S(m) = sum_{i != 1, n-1} a_i m_i,
//   sum_{S(m) <= beta} (beta + a_{n-1})! / (prod m_i! (beta - S(m))!)
//     x_1^{beta - S(m)} x_{n-1}^{-1} prod_{i != 1, n-1} x_i^{m_i},
// stored over the base exponent of the modified series.
FormalSeries p_n1_closed_form(const CurveMatrix& a, const Rational& beta);

// P_{n-1} itself.
WeylOperator p_n1_operator(const CurveMatrix& a);

// Drops terms with nonzero x_0 exponent of a series over (1, a_1, ..., a_n)
// and returns the series over A. Throws WrongAuxiliaryShape.
FormalSeries substitute_x0(const FormalSeries& s, const CurveMatrix& a);

// Applies d^w; the parameter drops by A.w.
FormalSeries apply_contiguity(const FormalSeries& s, const IntVector& w, const CurveMatrix& a);

nlohmann::json to_json(const FormalSeries& s);
// Rebuilds the trust window from the descriptor when it names one.
FormalSeries series_from_json(const nlohmann::json& j);

}  // namespace gkz
