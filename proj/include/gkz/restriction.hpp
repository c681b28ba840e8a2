#pragma once

// Restrictions of M_A(beta) to coordinate subspaces, closed-form b-functions
// and generic rank bookkeeping.

#include <string>
#include <vector>

#include "gkz/curve.hpp"
#include "gkz/weyl.hpp"

namespace gkz {

enum class Caveat { ProvenForThisBeta, GenericBetaOnly };

struct ModuleDescriptor {
  CurveMatrix matrix;
  Rational parameter;
  Caveat caveat = Caveat::ProvenForThisBeta;
};

// Restriction to (x_i = 0), i a 0-based column in 1..n-1: M_{A without a_i}(beta).
ModuleDescriptor restrict_hyperplane(const CurveMatrix& a, const Rational& beta, std::size_t column);

// A = (1, ka, kb), gcd(a, b) = 1: restriction to (x_1 = 0) splits into
// M_{(a,b)}((beta - i)/k), i < k. Throws WrongShape.
std::vector<ModuleDescriptor> restrict_x1_split(const CurveMatrix& a, const Rational& beta);

// Restriction to the (x_{n-1}, x_n) plane: k = gcd(a_{n-1}, a_n) summands
// M_{(a_{n-1}/k, a_n/k)}((beta - i)/k).
std::vector<ModuleDescriptor> restrict_to_plane(const CurveMatrix& a, const Rational& beta);

struct AuxiliaryRestriction {
  ModuleDescriptor result;       // M_A(beta)
  CurveMatrix auxiliary;         // (1, a_1, ..., a_n)
  std::vector<DeltaExponent> deltas;
  std::vector<WeylOperator> q;   // d_0 d_i^{delta_i} - d^{rho_i}, over the auxiliary matrix
  WeylOperator p1;               // d_0^{a_1} - d_1
};

// M_A(beta) as the restriction of M_{A'}(beta) to x_0 = 0. Throws
// WrongAuxiliaryShape for a_1 = 1.
AuxiliaryRestriction restrict_aux(const CurveMatrix& a, const Rational& beta);

struct WeightTag {
  enum Kind { FirstCoordinate, StandardBasis } kind;
  std::size_t index = 0;  // 0-based column for StandardBasis
};

struct BFunction {
  std::vector<Rational> roots;  // with multiplicity
  Caveat caveat = Caveat::ProvenForThisBeta;
};

// Closed forms: (1, ka, kb) with the first coordinate weight gives roots
// 0..k-1; an auxiliary matrix (1, a_1, ..., a_n) with a_1 > 1 gives {0}; a
// unit weight e_i, i >= 2, on a smooth matrix gives {0}. Throws UnsupportedShape.
BFunction b_function(const CurveMatrix& a, const WeightTag& w);

// a_n: the number of generic solutions.
std::int64_t generic_rank(const CurveMatrix& a);

std::string to_string(Caveat c);

}  // namespace gkz
