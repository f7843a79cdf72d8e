#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include <divfree/classify.hpp>
#include <divfree/modules.hpp>
#include <divfree/sampling.hpp>

#include "testutil.hpp"

using namespace divfree;
using testutil::dv;
using testutil::fn;
using testutil::fnq;
using testutil::ge;

namespace {
WittElement wt(std::initializer_list<std::int64_t> grade, std::initializer_list<std::int64_t> dir) {
  return WittElement::term(testutil::ge(grade), testutil::dv(dir));
}
}  // namespace

TEST_CASE("action coefficients follow the family rules") {
  const Space W = testutil::standard3();
  const auto a = ge({1, 0, 0});
  const auto d2 = dv({0, 1, 0});

  // Trivial: everything acts as zero.
  CHECK(action_coefficient(W, ModuleSpec::trivial(3), a, d2, ge({0, 3, 0})).is_zero());

  // M(mu): coefficient (emb(b) + mu)(d).
  const auto m = ModuleSpec::family_m(fn({5, 7, 11}));
  CHECK(action_coefficient(W, m, a, d2, ge({0, 3, 0})) == Scalar(10));  // 3 + 7
  CHECK(action_coefficient(W, m, a, d2, ge({4, -7, 0})).is_zero());     // -7 + 7

  // A(zeta, eta): eta(d) at the special source -zeta, M(emb(zeta)) elsewhere.
  const auto zeta = ge({1, -1, 0});
  const auto eta = fn({2, 3, 5});
  const auto fa = ModuleSpec::family_a(zeta, eta);
  CHECK(fa.special_grade() == ge({-1, 1, 0}));
  CHECK(action_coefficient(W, fa, a, d2, ge({-1, 1, 0})) == Scalar(3));  // eta(d2)
  CHECK(action_coefficient(W, fa, a, d2, ge({0, 3, 0})) == Scalar(2));   // emb(b+zeta)(d2)

  // B(zeta, eta): eta(d) when the target a+b is the special grade.
  const auto fb = ModuleSpec::family_b(zeta, eta);
  CHECK(action_coefficient(W, fb, a, d2, ge({-2, 1, 0})) == Scalar(3));  // a+b = -zeta
  CHECK(action_coefficient(W, fb, a, d2, ge({0, 3, 0})) == Scalar(2));

  // With a non-identity pairing the coefficient uses the pairing's embed.
  const Space Ws{testutil::skew_pairing3()};
  const auto ms = ModuleSpec::family_m(Functional::zero(3));
  // emb((0,3,0)) = (0,3,0) under this pairing too (second row is e2).
  const auto dker = dv({1, -1, 0});  // in ker(emb(e1)) = ker((1,1,0))
  CHECK(action_coefficient(Ws, ms, a, dker, ge({0, 3, 0})) == Scalar(-3));
}

TEST_CASE("action coefficient preconditions") {
  const Space W = testutil::standard3();
  const auto m = ModuleSpec::family_m(fn({0, 0, 0}));
  // Grade zero is outside the subalgebra.
  CHECK_THROWS_AS(action_coefficient(W, m, GroupElement::zero(3), dv({0, 1, 0}), ge({1, 1, 1})),
                  ContractError);
  // Direction must lie in the kernel of its grade.
  CHECK_THROWS_AS(action_coefficient(W, m, ge({1, 0, 0}), dv({1, 0, 0}), ge({1, 1, 1})),
                  ContractError);
}

TEST_CASE("zero eta requires an explicit opt-in and degenerates to the M family") {
  const Space W = testutil::standard3();
  const auto zeta = ge({1, 0, -1});
  CHECK_THROWS_AS(ModuleSpec::family_a(zeta, Functional::zero(3)), ContractError);
  CHECK_THROWS_AS(ModuleSpec::family_b(zeta, Functional::zero(3)), ContractError);

  const auto a0 = ModuleSpec::family_a(zeta, Functional::zero(3), /*allow_zero_eta=*/true);
  const auto b0 = ModuleSpec::family_b(zeta, Functional::zero(3), /*allow_zero_eta=*/true);
  const auto m = ModuleSpec::family_m(W.grade_functional(zeta));
  CHECK(record_action_table(W, a0, 2) == record_action_table(W, m, 2));
  CHECK(record_action_table(W, b0, 2) == record_action_table(W, m, 2));
}

TEST_CASE("acting on module vectors is bilinear and validates membership") {
  const Space W = testutil::standard3();
  const auto spec = ModuleSpec::family_m(fn({1, 2, 3}));
  Sampler s(31);
  for (int i = 0; i < 20; ++i) {
    const auto g = s.s_element(W, 1, 2);
    const auto h = s.s_element(W, 1, 2);
    const auto v = s.module_vector(3, 2, 3);
    const auto w = s.module_vector(3, 2, 3);
    const Scalar c = s.scalar();
    CHECK(act(W, spec, g + h, v) == act(W, spec, g, v) + act(W, spec, h, v));
    CHECK(act(W, spec, g, v + w) == act(W, spec, g, v) + act(W, spec, g, w));
    CHECK(act(W, spec, g.scaled(c), v) == act(W, spec, g, v).scaled(c));
  }

  // Elements outside the subalgebra are rejected on the validating path.
  const auto bad = wt({1, 0, 0}, {1, 0, 0});
  CHECK_THROWS_AS(act(W, spec, bad, ModuleVector::basis(ge({0, 0, 0}))), ContractError);
}

TEST_CASE("module axiom holds for all four families") {
  const Space W = testutil::standard3();
  const ModuleSpec specs[] = {
      ModuleSpec::trivial(3),
      ModuleSpec::family_m(fn({0, 0, 0})),
      ModuleSpec::family_m(fnq({Scalar(1, 2), Scalar(-1, 3), Scalar(2)})),
      ModuleSpec::family_a(ge({1, -1, 0}), fn({2, 3, 5})),
      ModuleSpec::family_b(ge({0, 1, 1}), fn({1, 0, 4})),
  };
  for (const auto& spec : specs) {
    const auto report = verify_module_axiom(W, spec, 2, 5, 99);
    CHECK(report.ok());
    CHECK(report.checks > 0);
  }
}

TEST_CASE("module axiom detects a perturbed action") {
  const Space W = testutil::standard3();
  const auto spec = ModuleSpec::family_m(fn({1, 0, 0}));
  const auto special = ge({1, 1, 1});
  const TermAction perturbed = [&](const GroupElement& a, const DVector& d,
                                   const GroupElement& b) {
    Scalar c = action_coefficient(W, spec, a, d, b);
    if (b == special) c += Scalar(1);
    return c;
  };
  const auto report = verify_module_axiom(W, perturbed, 2);
  CHECK(!report.ok());
  CHECK(!report.first_counterexample.empty());

  // Replaying the honest rule through the same interface stays clean.
  const TermAction honest = [&](const GroupElement& a, const DVector& d, const GroupElement& b) {
    return action_coefficient(W, spec, a, d, b);
  };
  CHECK(verify_module_axiom(W, honest, 2).ok());
}

TEST_CASE("integral M modules decompose at the distinguished grade") {
  const Space W = testutil::standard3();
  const auto gens = GeneratorSet::standard(W);
  const auto g = ge({1, 0, -1});
  const auto spec = ModuleSpec::family_m(W.grade_functional(g));
  const auto bottom = -g;

  // The distinguished grade is annihilated...
  CHECK(annihilator_check(W, spec, bottom, gens));
  CHECK(submodule_orbit(W, spec, bottom, 2) == std::set<GroupElement>{bottom});
  // ...and unreachable from every other seed in the window.
  for (const auto& seed : box_grades(3, 1)) {
    if (seed == bottom) continue;
    CHECK(!submodule_orbit(W, spec, seed, 2).count(bottom));
  }
  // A non-integral M module has no annihilated grade in the window.
  const auto generic = ModuleSpec::family_m(fnq({Scalar(1, 2), Scalar(0), Scalar(0)}));
  for (const auto& b : box_grades(3, 1)) {
    CHECK(!annihilator_check(W, generic, b, gens));
  }
}

TEST_CASE("A modules make the special grade unreachable but not silent") {
  const Space W = testutil::standard3();
  const auto zeta = ge({0, 1, 0});
  const auto spec = ModuleSpec::family_a(zeta, fn({1, 2, 3}));
  const auto special = spec.special_grade();

  for (const auto& seed : box_grades(3, 1)) {
    if (seed == special) continue;
    CHECK(!submodule_orbit(W, spec, seed, 2).count(special));
  }
  // The special vector itself acts outward through eta.
  CHECK(submodule_orbit(W, spec, special, 2).size() > 1);
}

TEST_CASE("B modules annihilate the special grade but receive into it") {
  const Space W = testutil::standard3();
  const auto gens = GeneratorSet::standard(W);
  const auto zeta = ge({0, 1, 0});
  const auto spec = ModuleSpec::family_b(zeta, fn({1, 2, 3}));
  const auto special = spec.special_grade();

  CHECK(annihilator_check(W, spec, special, gens));
  CHECK(submodule_orbit(W, spec, special, 2) == std::set<GroupElement>{special});
  // The special grade is reachable from a neighbour through eta.
  const auto seed = special - ge({1, 0, 0});
  CHECK(submodule_orbit(W, spec, seed, 2).count(special) == 1);
}

TEST_CASE("module vectors keep a canonical term list") {
  auto v = ModuleVector::basis(ge({1, 2, 3}));
  CHECK(v.coeff_at(ge({1, 2, 3})).is_one());
  v.add_term(ge({1, 2, 3}), Scalar(-1));
  CHECK(v.is_zero());

  auto w = ModuleVector::basis(ge({0, 0, 1})).scaled(Scalar(2, 3));
  w.add_term(ge({0, 0, -1}), Scalar(5));
  CHECK(w.terms().size() == 2);
  CHECK(w.terms()[0].first == ge({0, 0, -1}));  // sorted by grade
  CHECK((-w).coeff_at(ge({0, 0, 1})) == Scalar(-2, 3));
}
