#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include <divfree/salgebra.hpp>
#include <divfree/sampling.hpp>

#include "testutil.hpp"

using namespace divfree;
using testutil::dv;
using testutil::ge;

namespace {
WittElement wt(std::initializer_list<std::int64_t> grade, std::initializer_list<std::int64_t> dir) {
  return WittElement::term(testutil::ge(grade), testutil::dv(dir));
}
}  // namespace

TEST_CASE("membership in the divergence-free simple subalgebra") {
  const Space W = testutil::standard3();
  CHECK(is_in_s(W, wt({1, 0, 0}, {0, 1, 0})));          // div = 0, nonzero grade
  CHECK(is_in_s(W, wt({1, 1, 0}, {1, -1, 0})));         // div = 1 - 1 = 0
  CHECK(!is_in_s(W, wt({1, 0, 0}, {1, 0, 0})));         // div = x^{e1}
  CHECK(!is_in_s(W, wt({0, 0, 0}, {0, 1, 0})));         // zero-grade component
  CHECK(is_in_s(W, wt({1, 0, 0}, {0, 1, 0}) + wt({0, 1, 0}, {1, 0, 0})));
  // Divergences cancelling across grades is not enough: each grade must be
  // divergence-free on its own for the sum of homogeneous pieces to be, and
  // the map is grade-diagonal, so a single bad grade shows up.
  CHECK(!is_in_s(W, wt({1, 0, 0}, {1, 0, 0}) + wt({0, 1, 0}, {0, 1, 0})));
}

TEST_CASE("graded basis of the subalgebra has dimension rank - 1") {
  const Space W = testutil::standard3();
  for (const auto& a : box_grades(3, 2)) {
    if (a.is_zero()) continue;
    const auto basis = s_grade_basis(W, a);
    CHECK(basis.size() == 2);
    for (const auto& e : basis) {
      CHECK(e.grade == a);
      CHECK(W.pair(a, e.direction).is_zero());
      CHECK(is_in_s(W, e.to_witt()));
    }
  }
  CHECK_THROWS_AS(s_grade_basis(W, GroupElement::zero(3)), DomainError);
}

TEST_CASE("standard generator family") {
  const Space W = testutil::standard3();
  const auto gens = GeneratorSet::standard(W);
  CHECK(gens.size() == 12);  // 2 * rank * (rank - 1)
  CHECK(!gens.extrapolated());

  std::multiset<GroupElement> grades;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto& g = gens[i];
    CHECK(g.grade.inf_norm() == 1);
    CHECK(is_in_s(W, g.to_witt()));
    grades.insert(g.grade);
  }
  // Each of the six unit grades +-e_i carries rank - 1 = 2 generators.
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(grades.count(GroupElement::unit(3, i)) == 2);
    CHECK(grades.count(-GroupElement::unit(3, i)) == 2);
  }

  const Space W4 = Space::standard(4);
  const auto gens4 = GeneratorSet::standard(W4);
  CHECK(gens4.size() == 24);
  CHECK(gens4.extrapolated());
}

TEST_CASE("nested bracket span reaches the full graded component") {
  const Space W = testutil::standard3();
  const auto gens = GeneratorSet::standard(W);

  // At a generator grade the component is already spanned by generators.
  CHECK(nested_bracket_span(W, gens, ge({1, 0, 0}), 1).size() == 2);
  // One bracket reaches mixed grades.
  CHECK(nested_bracket_span(W, gens, ge({1, 1, 0}), 1).size() == 2);
  // Every element produced lies in the right graded component of S.
  for (const auto& u : nested_bracket_span(W, gens, ge({2, -1, 1}), 4)) {
    CHECK(is_in_s(W, u));
    CHECK(grade_component(u, ge({2, -1, 1})) == u);
  }
  CHECK_THROWS_AS(nested_bracket_span(W, gens, GroupElement::zero(3), 2), DomainError);
}

TEST_CASE("span check covers the radius-1 window at depth 4") {
  const Space W = testutil::standard3();
  const auto gens = GeneratorSet::standard(W);
  const auto report = span_check(W, gens, 1, 4);
  CHECK(report.all_ok());
  CHECK(report.grades_checked == 26);  // 3^3 - 1 nonzero grades
  CHECK(report.shortfalls.empty());
}

TEST_CASE("windowed structure constants are antisymmetric and reproduce brackets") {
  const Space W = testutil::standard3();
  const auto sc = structure_constants(W, 1);
  CHECK(sc.radius == 1);
  CHECK(sc.basis.size() == 52);  // 26 nonzero grades x dimension 2

  // Entries are sorted by (i, j, k) and antisymmetric in (i, j).
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Scalar> by_key;
  for (const auto& e : sc.entries) {
    CHECK(!e.c.is_zero());
    by_key[{e.i, e.j, e.k}] = e.c;
  }
  CHECK(by_key.size() == sc.entries.size());
  for (const auto& [key, c] : by_key) {
    const auto [i, j, k] = key;
    auto it = by_key.find({j, i, k});
    REQUIRE(it != by_key.end());
    CHECK(it->second == -c);
  }

  // Where the bracket grade stays inside the window, the recorded rows
  // reconstruct the bracket exactly.
  for (std::size_t i = 0; i < sc.basis.size(); i += 7) {
    for (std::size_t j = 0; j < sc.basis.size(); j += 5) {
      const auto target = sc.basis[i].grade + sc.basis[j].grade;
      if (target.is_zero() || target.inf_norm() > sc.radius) continue;
      WittElement sum(3);
      for (const auto& e : sc.entries) {
        if (e.i == i && e.j == j) {
          sum += sc.basis[e.k].to_witt().scaled(e.c);
        }
      }
      CHECK(sum == bracket(W, sc.basis[i].to_witt(), sc.basis[j].to_witt()));
    }
  }
}

TEST_CASE("bracket span growth is monotone in height") {
  const Space W = testutil::standard3();
  const auto gens = GeneratorSet::standard(W);
  const auto a = ge({2, 1, 0});
  const BracketSpan low(W, gens, 2, 4);
  const BracketSpan high(W, gens, 4, 4);
  CHECK(low.dimension(a) <= high.dimension(a));
  CHECK(high.dimension(a) == 2);
}
