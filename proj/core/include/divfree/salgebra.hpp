#pragma once

#include <map>
#include <vector>

#include <divfree/witt.hpp>

namespace divfree {

// A homogeneous element x^grade direction of the divergence-free subalgebra.
struct SBasisElement {
  GroupElement grade;
  DVector direction;

  WittElement to_witt() const { return WittElement::term(grade, direction); }
};

// True when u lies in the simple divergence-free subalgebra: divergence zero
// and no zero-grade component.
bool is_in_s(const Space& W, const WittElement& u);

// Canonical basis of the grade-a component of the divergence-free subalgebra:
// x^a paired with the kernel basis of emb(a).  The zero grade is excluded by
// contract; the simple subalgebra has no zero-grade part.
std::vector<SBasisElement> s_grade_basis(const Space& W, const GroupElement& a);

// The standard generator family: x^{+-eps_i} d_j for all i != j, where d_j is
// the direction dual to axis j.  Proven to generate for rank 3; for higher
// ranks the same pattern is produced with the extrapolated flag set.
class GeneratorSet {
 public:
  static GeneratorSet standard(const Space& W);

  const std::vector<SBasisElement>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  const SBasisElement& operator[](std::size_t i) const { return elements_[i]; }
  bool extrapolated() const { return extrapolated_; }

 private:
  std::vector<SBasisElement> elements_;
  bool extrapolated_ = false;
};

// Iteratively closes the generator set under the bracket.  Elements found at
// step k are brackets of pairs found strictly earlier, so step k holds
// exactly the bracket trees of height at most k (generators are height 1).
// Per-grade spans are row-reduced after every step to cap growth; grades
// beyond grade_cap in sup norm are discarded.
class BracketSpan {
 public:
  BracketSpan(const Space& W, const GeneratorSet& gens, int height, std::int64_t grade_cap);

  // Independent homogeneous elements found at the grade, as Witt elements.
  std::vector<WittElement> spanning(const GroupElement& grade) const;
  std::size_t dimension(const GroupElement& grade) const;

 private:
  std::size_t rank_;
  std::map<GroupElement, std::vector<DVector>> span_;
};

// Spanning set for the grade-a component reachable with at most depth bracket
// applications (bracket trees of height depth + 1; bare generators count as
// zero applications).  grade_cap < 0 selects ||a||_inf + 2, enough for every
// witnessed spanning pattern at desk scale.
std::vector<WittElement> nested_bracket_span(const Space& W, const GeneratorSet& gens,
                                             const GroupElement& a, int depth,
                                             std::int64_t grade_cap = -1);

// Compares the reached span with the full graded component over a window.
struct SpanCheckRow {
  GroupElement grade;
  std::size_t achieved = 0;
  std::size_t expected = 0;
};
struct SpanCheckReport {
  int radius = 0;
  int depth = 0;
  std::vector<SpanCheckRow> shortfalls;  // rows with achieved < expected
  std::uint64_t grades_checked = 0;
  bool all_ok() const { return shortfalls.empty(); }
};
SpanCheckReport span_check(const Space& W, const GeneratorSet& gens, int radius, int depth);

// Windowed structure constants of the divergence-free subalgebra relative to
// the canonical graded basis: entries c with [basis_i, basis_j] having
// coefficient c on basis_k.
struct StructureConstants {
  int radius = 0;
  std::vector<SBasisElement> basis;
  struct Entry {
    std::size_t i, j, k;
    Scalar c;
  };
  std::vector<Entry> entries;  // ordered by (i, j, k)
};
StructureConstants structure_constants(const Space& W, int radius);

}  // namespace divfree
