#pragma once

#include <cstdint>
#include <string>

#include <divfree/classify.hpp>

namespace divfree {

// Aggregated outcome of one verification sweep.  `checks` counts individual
// exact comparisons; any failure carries a description of the first one.
struct SweepReport {
  std::string suite;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  std::string first_counterexample;
  double seconds = 0.0;

  bool ok() const { return failures == 0; }
};

std::string to_json(const SweepReport& r);

// Exhaustive Jacobi identity check over every ordered triple of single-term
// basis elements of the divergence-free subalgebra with grades in the box of
// the given radius.  jobs > 1 splits the outer loop across threads; workers
// share nothing and their tallies are merged in order.
SweepReport jacobi_sweep(const Space& W, int radius, int jobs = 1);

// Randomized check of the two divergence identities
//   div([u, v]) = u.div(v) - v.div(u)   and
//   div(f u)    = f div(u) + u.f,
// with `samples` draws each.
SweepReport divergence_identity_sweep(const Space& W, int radius, int samples,
                                      std::uint64_t seed);

// Module axiom act([u,v]) = [act(u), act(v)] for one family (several random
// parameter draws) or for all four families.
SweepReport module_axiom_sweep_family(const Space& W, Family family, int radius, int draws,
                                      std::uint64_t seed);
SweepReport module_axiom_sweep(const Space& W, int radius, int draws, std::uint64_t seed);

// Fixed catalog of composite-action constancy checks (20 cases spanning all
// four families, including cases with the special grade on the scan line),
// each over i in [-range, range].
SweepReport lemma52_suite(const Space& W, int range = 5);

// Fixed catalog of two-parameter grid checks, including cases built so the
// nonvanishing hypotheses fail; a case counts as a failure only when its
// hypotheses hold and a verified relation breaks, or when no catalog case
// meets the hypotheses at all.
SweepReport lemma53_suite(const Space& W, int range = 3);

// Bracket-span generation witness over the window.
SweepReport span_suite(const Space& W, int radius, int depth);

}  // namespace divfree
