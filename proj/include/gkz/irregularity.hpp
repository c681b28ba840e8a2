#pragma once

// Slopes, dimension tables of the irregularity complex along Y = (x_n = 0),
// solution bases, Gevrey index estimation and monodromy data.
// Z = (x_{n-1} = 0) splits Y into the smooth stratum Y \ Z and Y n Z.

#include <optional>
#include <string>
#include <vector>

#include "gkz/curve.hpp"
#include "gkz/formal_series.hpp"

namespace gkz {

enum class PointClass { GenericPoint, SmoothStratum, DeepStratum };

enum class Sheaf { Holomorphic, GevreyFormal, GevreyQuotient };

// Gevrey order s >= 1; nullopt stands for s = infinity.
struct GevreyOrder {
  std::optional<Rational> s;
  static GevreyOrder infinity() { return {}; }
  static GevreyOrder of(const Rational& s);  // throws IndexOutOfRange for s < 1
  bool at_least(const Rational& t) const { return !s || *s >= t; }
};

struct SheafTag {
  Sheaf sheaf;
  GevreyOrder order;  // ignored for Holomorphic
};

struct DimensionAnswer {
  std::optional<std::int64_t> value;  // nullopt: no known result covers the query
  bool covered() const { return value.has_value(); }
  bool operator==(const DimensionAnswer&) const = default;
};

Rational slope(const CurveMatrix& a);

DimensionAnswer irregularity_dimension(const CurveMatrix& a, const Rational& beta, PointClass pt,
                                       const SheafTag& tag, std::int64_t ext_degree);

struct BasisElement {
  std::string label;
  FormalSeries series;
  bool modified = false;  // the modified series for natural beta
};

struct SolutionBasis {
  SheafTag sheaf;
  Rational parameter;  // parameter the series solve; differs from beta after a contiguity shift
  std::optional<IntVector> contiguity;  // w with d^w mapping Sol(beta) onto Sol(parameter)
  std::vector<BasisElement> elements;
};

// Throws SlopeTooSmall, NotCovered.
SolutionBasis solution_basis(const CurveMatrix& a, const Rational& beta, PointClass pt,
                             const GevreyOrder& s, std::int64_t truncation);

// frac((beta - k)/a_{n-1}) for k = 0..a_{n-1}-1.
std::vector<Rational> monodromy_rotations(const CurveMatrix& a, const Rational& beta);

// Coefficients multiplied by (i!)^{1-s}, i the exponent of x_{axis}.
// Floating point; diagnostics only.
std::vector<std::pair<IntVector, double>> rho_s_transform(const FormalSeries& s, const Rational& order,
                                                          std::size_t axis);

struct CoefficientStream {
  std::vector<std::int64_t> exponents;  // exponent k along the axis
  std::vector<Rational> coefficients;
};

struct Designated {
  enum Kind { Exponent, Tilde } kind;
  std::int64_t j = 0;
};

// Coefficients of the subseries along the ray m_{n-1} = a_n mu, m_n = a_{n-1} mu.
// Tilde: c_mu = (-1)^{a_n mu} (a_n mu)! / (a_{n-1} mu)!.
CoefficientStream designated_subseries(const CurveMatrix& a, const Rational& beta,
                                       const Designated& which, std::int64_t count);

CoefficientStream factorial_stream(std::int64_t count);
CoefficientStream inverse_factorial_stream(std::int64_t count);

// Least-squares fit of log|c_k| = (s-1) log k! + C k + D on the top half of
// the nonzero terms. Returns max(1, s). Throws InsufficientData below 16 terms.
double gevrey_index_estimate(const CoefficientStream& stream);

struct Figure1 {
  // rows: O special, O generic, O^ special, O^ generic, Q special, Q generic
  // columns: (Y n Z, Ext^0), (Y \ Z, Ext^0), (Y n Z, Ext^1), (Y \ Z, Ext^1)
  std::vector<std::vector<std::int64_t>> computed, reference;
  std::vector<std::string> row_labels, column_labels;
  bool matches() const { return computed == reference; }
};

// Throws NotSmooth, SlopeTooSmall, BetaNotNatural.
Figure1 repro_figure1(const CurveMatrix& a, const Rational& beta_special,
                      const Rational& beta_generic, const Rational& s);

std::string to_string(PointClass pt);
std::string to_string(const SheafTag& tag);

}  // namespace gkz
