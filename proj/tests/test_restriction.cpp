#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>

#include "gkz/exponents.hpp"
#include "gkz/restriction.hpp"
#include "gkz/series.hpp"

using namespace gkz;

namespace {

Rational q(std::int64_t p, std::int64_t d = 1) { return make_rational(p, d); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::Parse;
}

// Keeps the terms with vanishing x_column exponent and drops that variable.
FormalSeries set_to_zero(const FormalSeries& s, std::size_t column) {
  FormalSeries out;
  for (std::size_t i = 0; i < s.base.size(); ++i)
    if (i != column) out.base.push_back(s.base[i]);
  for (const auto& [u, c] : s.terms) {
    if (s.base[column] + q(u[column]) != 0) continue;
    IntVector v;
    for (std::size_t i = 0; i < u.size(); ++i)
      if (i != column) v.push_back(u[i]);
    out.add(v, c);
  }
  return out;
}

}  // namespace

TEST_CASE("hyperplane restriction") {
  auto a = make_curve({1, 2, 3});
  auto r = restrict_hyperplane(a, q(4), 1);
  CHECK(r.matrix.entries() == IntVector{1, 3});
  CHECK(r.parameter == 4);
  CHECK(r.caveat == Caveat::ProvenForThisBeta);
  CHECK(code_of([&] { restrict_hyperplane(a, q(4), 0); }) == ErrorCode::IndexOutOfRange);
  CHECK(code_of([&] { restrict_hyperplane(a, q(4), 3); }) == ErrorCode::IndexOutOfRange);
  CHECK(code_of([&] { restrict_hyperplane(make_curve({3, 5, 7}), q(4), 1); }) == ErrorCode::NotSmooth);
  CHECK(code_of([&] { restrict_hyperplane(make_curve({1, 5}), q(4), 1); }) == ErrorCode::IndexOutOfRange);
}

TEST_CASE("setting x_i = 0 in polynomial solutions gives solutions of the restricted system") {
  for (auto a : {make_curve({1, 2, 3}), make_curve({1, 3, 4, 5}), make_curve({1, 2, 5})}) {
    for (std::int64_t b = 0; b <= 9; ++b) {
      const Rational beta = q(b);
      auto phi = build_phi_exponent(a, beta, *q_index(a, beta), 24);
      for (std::size_t col = 1; col < a.size(); ++col) {
        auto r = restrict_hyperplane(a, beta, col);
        auto restricted = set_to_zero(phi, col);
        auto rep = annihilation_report(hypergeometric_generators(r.matrix, r.parameter, 2), restricted);
        CHECK(rep.max_violation == 0);
      }
    }
  }
}

TEST_CASE("x_1 split and plane restriction") {
  auto s = restrict_x1_split(make_curve({1, 4, 6}), q(5));
  REQUIRE(s.size() == 2);
  CHECK(s[0].matrix.entries() == IntVector{2, 3});
  CHECK(s[0].parameter == q(5, 2));
  CHECK(s[1].parameter == q(2));
  CHECK(s[0].caveat == Caveat::GenericBetaOnly);
  CHECK(code_of([] { restrict_x1_split(make_curve({1, 2, 3, 5}), q(0)); }) == ErrorCode::WrongShape);

  auto p = restrict_to_plane(make_curve({1, 3, 6, 8}), q(7));
  REQUIRE(p.size() == 2);
  CHECK(p[0].matrix.entries() == IntVector{3, 4});
  CHECK(p[0].parameter == q(7, 2));
  CHECK(p[1].parameter == q(3));
  CHECK(restrict_to_plane(make_curve({1, 2, 3}), q(1)).size() == 1);
  CHECK(code_of([] { restrict_to_plane(make_curve({1, 5}), q(0)); }) == ErrorCode::UnsupportedShape);
}

TEST_CASE("generic rank is additive over the split") {
  for (auto e : {IntVector{1, 4, 6}, IntVector{1, 6, 9}, IntVector{1, 2, 3}, IntVector{1, 10, 15}}) {
    auto a = make_curve(e);
    std::int64_t total = 0;
    for (const auto& m : restrict_x1_split(a, q(1, 3))) total += generic_rank(m.matrix);
    CHECK(total == generic_rank(a));
  }
  CHECK(generic_rank(make_curve({1, 4, 6})) == 6);
}

TEST_CASE("b-functions") {
  auto b = b_function(make_curve({1, 4, 6}), {WeightTag::FirstCoordinate, 0});
  CHECK(b.roots == std::vector<Rational>{q(0), q(1)});
  CHECK(b.caveat == Caveat::GenericBetaOnly);
  for (auto e : {IntVector{1, 4, 6}, IntVector{1, 6, 9}, IntVector{1, 2, 3}, IntVector{1, 12, 18}}) {
    auto a = make_curve(e);
    CHECK(b_function(a, {WeightTag::FirstCoordinate, 0}).roots.size() == restrict_x1_split(a, q(1, 2)).size());
  }
  CHECK(b_function(make_curve({1, 2, 3, 5}), {WeightTag::FirstCoordinate, 0}).roots == std::vector<Rational>{q(0)});
  CHECK(b_function(make_curve({1, 2, 3}), {WeightTag::StandardBasis, 2}).roots == std::vector<Rational>{q(0)});
  CHECK(code_of([] { b_function(make_curve({1, 2, 3}), {WeightTag::StandardBasis, 0}); }) ==
        ErrorCode::UnsupportedShape);
  CHECK(code_of([] { b_function(make_curve({3, 5, 7}), {WeightTag::FirstCoordinate, 0}); }) ==
        ErrorCode::UnsupportedShape);
  CHECK(code_of([] { b_function(make_curve({1, 4, 6, 8}), {WeightTag::FirstCoordinate, 0}); }) ==
        ErrorCode::UnsupportedShape);
}

TEST_CASE("auxiliary restriction operators") {
  auto a = make_curve({3, 5, 7});
  auto r = restrict_aux(a, q(1, 2));
  CHECK(r.auxiliary.entries() == IntVector{1, 3, 5, 7});
  CHECK(r.result.matrix.entries() == a.entries());
  REQUIRE(r.q.size() == 3);
  CHECK(r.q[0] == box_operator(r.auxiliary, {1, 2, 0, -1}));
  CHECK(r.q[1] == box_operator(r.auxiliary, {1, -2, 1, 0}));
  CHECK(r.p1 == box_operator(r.auxiliary, {3, -1, 0, 0}));
  CHECK(code_of([] { restrict_aux(make_curve({1, 2, 3}), q(0)); }) == ErrorCode::WrongAuxiliaryShape);

  for (auto m : {make_curve({3, 5, 7}), make_curve({2, 3}), make_curve({2, 5, 9})}) {
    auto ar = restrict_aux(m, q(1, 3));
    for (std::int64_t j = 0; j < ar.auxiliary.penultimate(); ++j) {
      auto s = build_phi_exponent(ar.auxiliary, q(1, 3), j, 10);
      std::vector<WeylOperator> ops = ar.q;
      ops.push_back(ar.p1);
      CHECK(annihilation_report(ops, s).max_violation == 0);
    }
  }
}
