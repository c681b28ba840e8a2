#pragma once

// Operators in the Weyl algebra A_n, stored in normal form
// sum c x^alpha d^gamma with every x to the left of every d.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gkz/curve.hpp"
#include "gkz/formal_series.hpp"

namespace gkz {

class WeylOperator {
 public:
  using Key = std::pair<IntVector, IntVector>;  // (alpha, gamma)

  explicit WeylOperator(std::size_t variables = 0) : n_(variables) {}

  static WeylOperator constant(std::size_t variables, const Rational& c);
  static WeylOperator x(std::size_t variables, std::size_t i);
  static WeylOperator d(std::size_t variables, std::size_t i);
  static WeylOperator monomial(IntVector alpha, IntVector gamma, const Rational& c = 1);

  std::size_t variables() const { return n_; }
  const std::map<Key, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const IntVector& alpha, const IntVector& gamma, const Rational& c);

  WeylOperator operator+(const WeylOperator& o) const;
  WeylOperator operator-(const WeylOperator& o) const;
  WeylOperator operator*(const Rational& c) const;
  bool operator==(const WeylOperator& o) const { return n_ == o.n_ && terms_ == o.terms_; }

 private:
  std::size_t n_;
  std::map<Key, Rational> terms_;
};

// Normal-ordered product P*Q. Throws DimensionMismatch.
WeylOperator op_multiply(const WeylOperator& p, const WeylOperator& q);
inline WeylOperator operator*(const WeylOperator& p, const WeylOperator& q) {
  return op_multiply(p, q);
}

// theta_i = x_i d_i.
WeylOperator theta(std::size_t variables, std::size_t i);

// sum a_i x_i d_i - beta.
WeylOperator euler_operator(const CurveMatrix& a, const Rational& beta);

// d^{u+} - d^{u-}. Throws NotInKernel when A.u != 0.
WeylOperator box_operator(const CurveMatrix& a, const IntVector& u);

// d_1^{a_i} - d_i for i = 2..n. Throws NotSmooth.
std::vector<WeylOperator> toric_generators_smooth(const CurveMatrix& a);

// Box operators of every lattice vector with coordinate L1 norm in 1..radius,
// one per {u, -u} pair.
std::vector<WeylOperator> lattice_box_operators(const CurveMatrix& a, std::int64_t radius);

// Toric generators (binomials of the lattice basis for general A), the Euler
// operator and the box operators up to radius.
std::vector<WeylOperator> hypergeometric_generators(const CurveMatrix& a, const Rational& beta,
                                                    std::int64_t radius);

std::string to_string(const WeylOperator& p);

// Support of P(S): output offset o is exact when every contributor
// o + gamma - alpha is exact in S.
class AppliedSupport final : public Support {
 public:
  AppliedSupport(std::shared_ptr<const Support> parent, std::vector<IntVector> shifts)
      : parent_(std::move(parent)), shifts_(std::move(shifts)) {}
  bool exact(const IntVector& offset) const override;
  std::string descriptor() const override { return "derived"; }

 private:
  std::shared_ptr<const Support> parent_;
  std::vector<IntVector> shifts_;  // gamma - alpha per operator term
};

// Exact term-by-term action of P on S; the base exponent is kept.
FormalSeries apply(const WeylOperator& p, const FormalSeries& s);

struct GeneratorReport {
  std::string op;
  Rational max_violation;
  std::size_t checked = 0;  // trusted output offsets reached from stored terms
  std::size_t skipped = 0;  // reached but outside the trusted window
};

struct AnnihilationReport {
  Rational max_violation;
  std::vector<GeneratorReport> per_generator;
  std::size_t checked() const;
};

AnnihilationReport annihilation_report(const std::vector<WeylOperator>& gens,
                                       const FormalSeries& s);

}  // namespace gkz
