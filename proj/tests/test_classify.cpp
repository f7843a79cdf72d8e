#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <divfree/classify.hpp>
#include <divfree/sampling.hpp>

#include "testutil.hpp"

using namespace divfree;
using testutil::dv;
using testutil::fn;
using testutil::fnq;
using testutil::ge;

namespace {
// Either outcome counts as rejecting a corrupted table: the bracket-identity
// screen throws, or the fit survives it but ends in NoFit with residuals.
bool rejects(const Space& W, const ActionTable& table) {
  try {
    const auto fit = classify_table(W, table);
    return fit.verdict == FitKind::NoFit && !fit.residuals.empty();
  } catch (const TableInconsistency&) {
    return true;
  }
}
}  // namespace

TEST_CASE("recorded tables hold the family coefficients") {
  const Space W = testutil::standard3();
  const auto table = record_action_table(W, ModuleSpec::family_m(Functional::zero(3)), 2);
  CHECK(table.rank() == 3);
  CHECK(table.radius() == 2);
  CHECK(table.generator_count() == 12);
  // Generator 0 is x^{+e1} d2 in the standard order: acting on v_{(0,1,0)}
  // multiplies by emb((0,1,0))(d2) = 1.
  CHECK(table.get(0, ge({0, 1, 0})) == Scalar(1));
  CHECK(table.get(0, ge({0, -1, 0})) == Scalar(-1));
  // Coefficients vanishing on the kernel leave no entry.
  CHECK(table.get(0, ge({0, 0, 2})).is_zero());
  // Entries whose source or target leaves the window do not exist.
  CHECK(!table.has_room(0, ge({2, 0, 0})));
  auto writable = table;
  CHECK_THROWS_AS(writable.set(0, ge({2, 0, 0}), Scalar(1)), DomainError);
  CHECK_THROWS_AS(table.get(99, ge({0, 0, 0})), DomainError);
}

TEST_CASE("classification round trip recovers each family exactly") {
  const Space W = testutil::standard3();

  const auto trivial = ModuleSpec::trivial(3);
  auto fit = classify_table(W, record_action_table(W, trivial, 2));
  CHECK(fit.verdict == FitKind::TrivialFit);
  CHECK(fit.residuals.empty());

  const auto m = ModuleSpec::family_m(fnq({Scalar(1, 2), Scalar(-2), Scalar(7, 3)}));
  fit = classify_table(W, record_action_table(W, m, 2));
  CHECK(fit.verdict == FitKind::MFit);
  CHECK(fit.spec == m);

  const auto a = ModuleSpec::family_a(ge({1, -1, 0}), fn({2, 3, 5}));
  fit = classify_table(W, record_action_table(W, a, 3));
  CHECK(fit.verdict == FitKind::AFit);
  CHECK(fit.spec == a);

  const auto b = ModuleSpec::family_b(ge({0, 1, 1}), fn({1, 0, 4}));
  fit = classify_table(W, record_action_table(W, b, 3));
  CHECK(fit.verdict == FitKind::BFit);
  CHECK(fit.spec == b);
}

TEST_CASE("degenerate zero-eta tables classify as the M family") {
  const Space W = testutil::standard3();
  const auto zeta = ge({1, 0, -1});
  const auto a0 = ModuleSpec::family_a(zeta, Functional::zero(3), /*allow_zero_eta=*/true);
  const auto fit = classify_table(W, record_action_table(W, a0, 2));
  CHECK(fit.verdict == FitKind::MFit);
  CHECK(fit.spec == ModuleSpec::family_m(W.grade_functional(zeta)));
}

TEST_CASE("special grades at the window edge still classify") {
  const Space W = testutil::standard3();
  // zeta at the boundary of the radius-2 window.
  const auto a = ModuleSpec::family_a(ge({2, 0, 0}), fn({0, 1, 1}));
  const auto fit = classify_table(W, record_action_table(W, a, 2));
  CHECK(fit.verdict == FitKind::AFit);
  CHECK(fit.spec == a);
}

TEST_CASE("randomized round trips across families") {
  const Space W = testutil::standard3();
  Sampler s(777);
  for (int i = 0; i < 10; ++i) {
    const auto m = s.spec_m(W, i % 2 == 0);
    auto fit = classify_table(W, record_action_table(W, m, 3));
    CHECK(fit.verdict == FitKind::MFit);
    CHECK(fit.spec == m);

    const auto a = s.spec_a(W, 2);
    fit = classify_table(W, record_action_table(W, a, 3));
    CHECK(fit.verdict == FitKind::AFit);
    CHECK(fit.spec == a);

    const auto b = s.spec_b(W, 2);
    fit = classify_table(W, record_action_table(W, b, 3));
    CHECK(fit.verdict == FitKind::BFit);
    CHECK(fit.spec == b);
  }
}

TEST_CASE("single-entry faults are always rejected") {
  const Space W = testutil::standard3();
  const ModuleSpec specs[] = {
      ModuleSpec::family_m(fn({1, 0, -2})),
      ModuleSpec::family_a(ge({1, -1, 0}), fn({2, 3, 5})),
      ModuleSpec::family_b(ge({0, 1, 1}), fn({1, 0, 4})),
  };
  Sampler s(4242);
  for (const auto& spec : specs) {
    const auto honest = record_action_table(W, spec, 2);
    REQUIRE(classify_table(W, honest).verdict != FitKind::NoFit);

    // Corrupt an existing entry.
    auto t1 = honest;
    const auto& entries = honest.entries();
    auto it = entries.begin();
    std::advance(it, static_cast<long>(s.int_in(0, static_cast<std::int64_t>(entries.size()) - 1)));
    t1.set(it->first.first, it->first.second, it->second + Scalar(3));
    CHECK(rejects(W, t1));

    // Zero out an existing entry.
    auto t2 = honest;
    t2.set(it->first.first, it->first.second, Scalar(0));
    CHECK(rejects(W, t2));

    // Inject a fresh nonzero entry at a previously zero slot.
    auto t3 = honest;
    bool planted = false;
    for (const auto& b : box_grades(3, 2)) {
      for (std::size_t g = 0; g < t3.generator_count() && !planted; ++g) {
        if (t3.has_room(g, b) && t3.get(g, b).is_zero()) {
          t3.set(g, b, Scalar(9));
          planted = true;
        }
      }
      if (planted) break;
    }
    REQUIRE(planted);
    CHECK(rejects(W, t3));
  }
}

TEST_CASE("inconsistency certificates carry the violating site") {
  const Space W = testutil::standard3();
  auto table = record_action_table(W, ModuleSpec::family_m(fn({0, 0, 0})), 2);
  const auto key = table.entries().begin()->first;
  table.set(key.first, key.second, table.get(key.first, key.second) + Scalar(777));
  try {
    classify_table(W, table);
    FAIL("expected TableInconsistency");
  } catch (const TableInconsistency& e) {
    CHECK(!std::string(e.what()).empty());
    CHECK(!e.generators().empty());
    for (std::size_t g : e.generators()) CHECK(g < table.generator_count());
    CHECK(e.grade().rank() == 3);
  }
}

TEST_CASE("small ranks and mismatched tables are rejected up front") {
  const Space W2 = Space::standard(2);
  CHECK_THROWS_AS(classify_table(W2, ActionTable(2, 1)), DomainError);
  const Space W = testutil::standard3();
  CHECK_THROWS_AS(classify_table(W, ActionTable(4, 1)), DimensionError);
  CHECK_THROWS_AS(ActionTable(3, 0), DomainError);
  CHECK_THROWS_AS(ActionTable(1, 2), DomainError);
}

TEST_CASE("composite action constancy holds for the M family") {
  const Space W = testutil::standard3();
  const auto spec = ModuleSpec::family_m(W.grade_functional(ge({0, 3, 0})));
  const auto sigma = ge({1, 0, 0});
  const auto d = dv({0, 1, 0});
  const auto report = lemma52_check(W, spec, sigma, d, d, ge({1, 1, 1}), 4);
  CHECK(report.ok());
  CHECK(report.constant);
  CHECK(report.values.size() == 9);
  // c = ((emb(nu) + mu)(d))^2 = (1 + 3)^2.
  CHECK(report.c == Scalar(16));
  CHECK(report.rescale_applicable);
  CHECK(report.a == Scalar(4));
  CHECK(report.rescale_verified);
}

TEST_CASE("composite action vanishes identically when the special grade sits on the line") {
  const Space W = testutil::standard3();
  const auto spec = ModuleSpec::family_a(ge({2, 0, 0}), fn({1, 1, 1}));
  const auto sigma = ge({1, 0, 0});
  const auto d = dv({0, 1, 0});
  // The special source -zeta = (-2,0,0) equals nu + i*sigma at i = -3; on
  // such a line every bulk coefficient on d in ker(sigma) vanishes too, so
  // the composite is the constant zero.
  const auto report = lemma52_check(W, spec, sigma, d, d, ge({1, 0, 0}), 4);
  CHECK(report.ok());
  CHECK(report.constant);
  CHECK(report.c.is_zero());
  CHECK(!report.rescale_applicable);
}

TEST_CASE("two-parameter grid check verifies the squares relation") {
  const Space W = testutil::standard3();
  const auto sigma = ge({1, 0, 0});
  const auto rho = ge({0, 1, 0});
  const auto basis = lemma53_default_basis(W, sigma, rho);
  CHECK(basis.d1 == dv({0, 0, 1}));
  CHECK(W.pair(sigma, basis.d2).is_zero());
  CHECK(W.pair(rho, basis.d3).is_zero());

  const auto spec = ModuleSpec::family_m(fnq({Scalar(1, 2), Scalar(-1, 3), Scalar(3, 4)}));
  const auto report = lemma53_check(W, spec, sigma, rho, ge({2, -1, 0}), basis, 3);
  CHECK(report.hypotheses_met);
  CHECK(report.ok());
  CHECK(report.squares_ok);
  CHECK(report.a1 * report.a1 == report.d * report.d);
  CHECK(report.b1 * report.b1 == report.d * report.d);
  CHECK(report.checks > 0);
}

TEST_CASE("grid check reports unmet hypotheses instead of failing") {
  const Space W = testutil::standard3();
  const auto sigma = ge({1, 0, 0});
  const auto rho = ge({0, 1, 0});
  const auto basis = lemma53_default_basis(W, sigma, rho);

  // mu = 0 at nu = 0: the first grid action vanishes.
  const auto m0 = ModuleSpec::family_m(Functional::zero(3));
  auto report = lemma53_check(W, m0, sigma, rho, GroupElement::zero(3), basis, 3);
  CHECK(!report.hypotheses_met);
  CHECK(!report.note.empty());

  // A special grade on the grid plane kills a needed product.
  const auto a = ModuleSpec::family_a(ge({0, 0, -1}), fn({0, 0, 5}));
  report = lemma53_check(W, a, sigma, rho, ge({0, 0, 1}), basis, 3);
  CHECK(!report.hypotheses_met);
  CHECK(!report.note.empty());

  // Dependent directions are a caller error, not an unmet hypothesis.
  CHECK_THROWS_AS(lemma53_default_basis(W, sigma, sigma), ContractError);
}
