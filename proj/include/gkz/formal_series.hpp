#pragma once

// Sparse formal series x^v * sum_u c_u x^u with exact rational coefficients.
//
// A series only ever holds finitely many terms. Its Support object says which
// offsets are known exactly: a stored coefficient, or a coefficient that is
// provably zero. Everything else is outside the computed window.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "gkz/rational.hpp"

namespace gkz {

class Support {
 public:
  virtual ~Support() = default;
  // True when the coefficient at this offset is known exactly.
  virtual bool exact(const IntVector& offset) const = 0;
  // Stable text tag used by serialization.
  virtual std::string descriptor() const = 0;
};

// Every coefficient is known: the stored terms are the whole series.
class FiniteSupport final : public Support {
 public:
  bool exact(const IntVector&) const override { return true; }
  std::string descriptor() const override { return "finite"; }
};

// Nothing is known beyond the stored values; used for series read back
// without a reconstructible window.
class OpaqueSupport final : public Support {
 public:
  bool exact(const IntVector&) const override { return false; }
  std::string descriptor() const override { return "opaque"; }
};

struct FormalSeries {
  RationalVector base;
  std::map<IntVector, Rational> terms;
  std::int64_t truncation = 0;
  std::shared_ptr<const Support> support = std::make_shared<FiniteSupport>();
  // A.v of the series, when known. Contiguity and substitution update it.
  std::optional<Rational> parameter;

  std::size_t variables() const { return base.size(); }
  Rational coefficient(const IntVector& offset) const;
  bool trusted(const IntVector& offset) const { return support->exact(offset); }
  std::string descriptor() const { return support->descriptor(); }

  // Adds c at offset, dropping the entry if the sum cancels.
  // Throws TermLimit once the term count passes GKZ_MAX_TERMS.
  void add(const IntVector& offset, const Rational& c);
};

// Term cap read from GKZ_MAX_TERMS (default 2000000).
std::size_t max_terms();

FormalSeries monomial_series(const RationalVector& exponent, const Rational& c = 1);

// Human-readable rendering, e.g. "x2^2 + x1^2*x2 + 1/12*x1^4".
std::string to_string(const FormalSeries& s);

}  // namespace gkz
