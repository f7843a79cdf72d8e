#pragma once

#include <utility>
#include <vector>

#include <divfree/spaces.hpp>

namespace divfree {

// An element of the generalized Witt algebra W = F[Gamma] (x) D: a finite sum
// of terms x^alpha d with alpha a grade and d a direction.  Terms are kept
// sorted lexicographically by grade, with no zero directions, so the
// representation is canonical.
class WittElement {
 public:
  using Term = std::pair<GroupElement, DVector>;

  WittElement() = default;
  explicit WittElement(std::size_t rank) : rank_(rank) {}
  static WittElement term(GroupElement grade, DVector direction);

  std::size_t rank() const { return rank_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  // Direction at the given grade, or nullptr when absent.
  const DVector* direction_at(const GroupElement& grade) const;

  WittElement& operator+=(const WittElement& o);
  friend WittElement operator+(WittElement a, const WittElement& b) { return a += b; }
  friend WittElement operator-(WittElement a, const WittElement& b) { return a += -b; }
  WittElement operator-() const;
  WittElement scaled(const Scalar& c) const;
  void add_term(const GroupElement& grade, const DVector& direction);

  friend bool operator==(const WittElement&, const WittElement&) = default;

 private:
  std::size_t rank_ = 0;
  std::vector<Term> terms_;
};

// An element of the group algebra F[Gamma]: a finite sum of terms c x^alpha.
class GroupAlgebraElement {
 public:
  using Term = std::pair<GroupElement, Scalar>;

  GroupAlgebraElement() = default;
  explicit GroupAlgebraElement(std::size_t rank) : rank_(rank) {}
  static GroupAlgebraElement term(GroupElement grade, Scalar coeff);
  static GroupAlgebraElement one(std::size_t rank);

  std::size_t rank() const { return rank_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  Scalar coeff_at(const GroupElement& grade) const;

  GroupAlgebraElement& operator+=(const GroupAlgebraElement& o);
  friend GroupAlgebraElement operator+(GroupAlgebraElement a, const GroupAlgebraElement& b) {
    return a += b;
  }
  friend GroupAlgebraElement operator-(GroupAlgebraElement a, const GroupAlgebraElement& b) {
    return a += -b;
  }
  GroupAlgebraElement operator-() const;
  GroupAlgebraElement scaled(const Scalar& c) const;
  void add_term(const GroupElement& grade, const Scalar& coeff);

  friend bool operator==(const GroupAlgebraElement&, const GroupAlgebraElement&) = default;

 private:
  std::size_t rank_ = 0;
  std::vector<Term> terms_;
};

// The Lie bracket
//   [x^a d1, x^b d2] = x^{a+b} (emb(b)(d1) d2 - emb(a)(d2) d1),
// extended bilinearly.
WittElement bracket(const Space& W, const WittElement& u, const WittElement& v);

// The component of u in the grade-a homogeneous piece W_a.
WittElement grade_component(const WittElement& u, const GroupElement& a);

// div(x^a d) = emb(a)(d) x^a, extended linearly.
GroupAlgebraElement divergence(const Space& W, const WittElement& u);

// The module action of W on F[Gamma]: (x^a d) . x^b = emb(b)(d) x^{a+b}.
GroupAlgebraElement act_on_group_algebra(const Space& W, const WittElement& u,
                                         const GroupAlgebraElement& f);

// Left multiplication of a Witt element by a group algebra element:
// x^b (x^a d) = x^{a+b} d, extended bilinearly.
WittElement group_algebra_scale(const GroupAlgebraElement& f, const WittElement& u);

// Convolution product on the group algebra.
GroupAlgebraElement operator*(const GroupAlgebraElement& f, const GroupAlgebraElement& g);

}  // namespace divfree
