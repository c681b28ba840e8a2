#pragma once

// Curve matrices A = (a_1 ... a_n), the integer kernel L_A = ker_Z(A) and
// the numerical semigroup NA = N a_1 + ... + N a_n.
//
// Indices are 0-based throughout the library: column c holds a_{c+1}.

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "gkz/rational.hpp"

namespace gkz {

enum class CurveKind { Smooth, General };

class CurveMatrix {
 public:
  const IntVector& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  std::int64_t operator[](std::size_t c) const { return entries_[c]; }
  CurveKind kind() const { return kind_; }
  bool smooth() const { return kind_ == CurveKind::Smooth; }

  // a_{n-1} and a_n, the two entries that drive slopes and exponents.
  std::int64_t penultimate() const { return entries_[entries_.size() - 2]; }
  std::int64_t last() const { return entries_.back(); }

  // A.u for an integer vector of matching length.
  std::int64_t dot(std::span<const std::int64_t> u) const;
  Rational dot(const RationalVector& v) const;

  bool operator==(const CurveMatrix&) const = default;

 private:
  friend CurveMatrix make_curve(std::span<const std::int64_t> entries);
  IntVector entries_;
  CurveKind kind_ = CurveKind::Smooth;
};

// Throws TooShort, NotIncreasing or GcdNotOne.
CurveMatrix make_curve(std::span<const std::int64_t> entries);
inline CurveMatrix make_curve(std::initializer_list<std::int64_t> entries) {
  return make_curve(std::span<const std::int64_t>(entries.begin(), entries.size()));
}

// (1, a_1, ..., a_n), the auxiliary smooth matrix used for general curves.
CurveMatrix auxiliary_matrix(const CurveMatrix& a);

// A with column c removed (n >= 3).
CurveMatrix drop_column(const CurveMatrix& a, std::size_t c);

// A basis u^2, ..., u^n of L_A stored as n-1 rows, with a coordinate map so
// that membership and decomposition are exact integer operations.
//
// Smooth matrices use the explicit rows
//   u^i = -a_i e_1 + e_i            (2 <= i <= n-2 and i = n)
//   u^{n-1} = a_{n-1} e_1 - e_{n-1}
// General matrices use a basis read off a unimodular column reduction of A.
struct LatticeBasis {
  std::vector<IntVector> rows;
  // coordinates[k] . u gives the k-th coordinate of a kernel vector u.
  std::vector<IntVector> coordinates;

  std::size_t rank() const { return rows.size(); }
  std::size_t dimension() const { return rows.empty() ? 0 : rows.front().size(); }

  // u(m) = sum_k m_k rows[k].
  IntVector combine(std::span<const std::int64_t> m) const;
};

LatticeBasis lattice_basis(const CurveMatrix& a);

// m with u = u(m) when u lies in L_A, nullopt otherwise.
std::optional<IntVector> lattice_decompose(const LatticeBasis& basis,
                                           std::span<const std::int64_t> u);

// Membership table for NA up to a bound past the Frobenius number.
class SemigroupTable {
 public:
  explicit SemigroupTable(const CurveMatrix& a);

  bool contains(const Integer& b) const;
  bool contains(std::int64_t b) const { return contains(Integer(static_cast<long>(b))); }
  std::int64_t frobenius() const { return frobenius_; }
  std::int64_t bound() const { return static_cast<std::int64_t>(member_.size()) - 1; }

 private:
  std::vector<bool> member_;
  std::int64_t frobenius_ = -1;
};

bool semigroup_member(const CurveMatrix& a, std::int64_t b);
std::int64_t frobenius_number(const CurveMatrix& a);

// 1 + delta_i a_i = sum_{j != i} rho_ij a_j with delta_i minimal and rho_i the
// lexicographically smallest witness. rho_i skips column i.
struct DeltaExponent {
  std::int64_t delta;
  IntVector rho;
};

std::vector<DeltaExponent> delta_exponents(const CurveMatrix& a);

// Parameter classes up to isomorphism of M_A(beta).
struct InSemigroup {
  bool operator==(const InSemigroup&) const = default;
};
struct IntegerOutsideSemigroup {
  bool operator==(const IntegerOutsideSemigroup&) const = default;
};
struct NonInteger {
  Rational residue;  // beta mod 1
  bool operator==(const NonInteger&) const = default;
};
using BetaClass = std::variant<InSemigroup, IntegerOutsideSemigroup, NonInteger>;

BetaClass beta_class(const CurveMatrix& a, const Rational& beta);
BetaClass beta_class(const SemigroupTable& table, const Rational& beta);

// M_A(beta) ~ M_A(beta') exactly when both parameters fall in the same class.
bool isomorphic_parameters(const CurveMatrix& a, const Rational& beta,
                           const Rational& beta_other);

std::string to_string(const BetaClass& c);

}  // namespace gkz
