#pragma once

// Weights, initial ideals, standard pairs and exponent lists for smooth
// curves; general curves are handled through the auxiliary matrix.

#include <optional>
#include <set>
#include <vector>

#include "gkz/curve.hpp"
#include "gkz/series.hpp"

namespace gkz {

struct WeightVector {
  RationalVector omega;
};

// Conditions on omega for smooth A:
//   a) omega_i > a_i omega_1 for 2 <= i <= n-2 and i = n
//   b) a_{n-1} omega_1 > omega_{n-1}
//   c) omega_{n-1} > omega_1, ..., omega_{n-2}
bool valid_weight(const CurveMatrix& a, const WeightVector& w);

// omega = (1, a_2 + 1/3, ..., a_{n-2} + 1/3, a_{n-1} - 1/3, a_n + 1).
WeightVector standard_weight(const CurveMatrix& a);

// Exponent vectors of the monomial generators of in_omega(I_A):
// d_2, ..., d_{n-2}, d_1^{a_{n-1}}, d_n. Throws InvalidWeight, NotSmooth.
std::vector<IntVector> initial_ideal_generators(const CurveMatrix& a, const WeightVector& w);

struct StandardPair {
  IntVector monomial;
  std::set<std::size_t> face;  // 0-based columns
};

// (d_1^j, {n-1}) for j < a_{n-1}.
std::vector<StandardPair> standard_pairs(const CurveMatrix& a);

struct ExponentVector {
  RationalVector v;
  std::set<std::size_t> nsupp;
  Tristate minimal = Tristate::Unknown;
  // Set when v is written in coordinates of the auxiliary matrix.
  bool auxiliary = false;
};

// v^j for j < a_{n-1}. General A: computed for (1, a_1, ..., a_n).
std::vector<ExponentVector> singular_exponents(const CurveMatrix& a, const Rational& beta);

// w^j = (j, 0, ..., 0, (beta - j)/a_n) for j < a_n. General A: computed for
// the auxiliary matrix, to be followed by the x_0 = 0 substitution.
std::vector<ExponentVector> generic_exponents(const CurveMatrix& a, const Rational& beta);

// The unique q < a_{n-1} with (beta - q)/a_{n-1} natural, when beta is natural.
std::optional<std::int64_t> q_index(const CurveMatrix& a, const Rational& beta);

}  // namespace gkz
