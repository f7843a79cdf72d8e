#include <divfree/witt.hpp>

#include <algorithm>

#include <divfree/errors.hpp>

namespace divfree {

WittElement WittElement::term(GroupElement grade, DVector direction) {
  if (grade.rank() != direction.rank()) throw DimensionError("WittElement::term: rank mismatch");
  WittElement r(grade.rank());
  if (!direction.is_zero()) r.terms_.emplace_back(std::move(grade), std::move(direction));
  return r;
}

const DVector* WittElement::direction_at(const GroupElement& grade) const {
  const auto it = std::lower_bound(
      terms_.begin(), terms_.end(), grade,
      [](const Term& t, const GroupElement& g) { return t.first < g; });
  if (it == terms_.end() || it->first != grade) return nullptr;
  return &it->second;
}

void WittElement::add_term(const GroupElement& grade, const DVector& direction) {
  if (rank_ == 0 && terms_.empty()) rank_ = grade.rank();
  if (grade.rank() != rank_ || direction.rank() != rank_) {
    throw DimensionError("WittElement::add_term: rank mismatch");
  }
  if (direction.is_zero()) return;
  const auto it = std::lower_bound(
      terms_.begin(), terms_.end(), grade,
      [](const Term& t, const GroupElement& g) { return t.first < g; });
  if (it == terms_.end() || it->first != grade) {
    terms_.insert(it, {grade, direction});
    return;
  }
  it->second += direction;
  if (it->second.is_zero()) terms_.erase(it);
}

WittElement& WittElement::operator+=(const WittElement& o) {
  if (o.is_zero()) return *this;
  if (is_zero() && rank_ == 0) rank_ = o.rank_;
  if (rank_ != o.rank_) throw DimensionError("WittElement+=: rank mismatch");
  std::vector<Term> merged;
  merged.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    const auto cmp = terms_[i].first <=> o.terms_[j].first;
    if (cmp < 0) {
      merged.push_back(std::move(terms_[i++]));
    } else if (cmp > 0) {
      merged.push_back(o.terms_[j++]);
    } else {
      DVector d = std::move(terms_[i].second);
      d += o.terms_[j].second;
      if (!d.is_zero()) merged.emplace_back(std::move(terms_[i].first), std::move(d));
      ++i;
      ++j;
    }
  }
  while (i < terms_.size()) merged.push_back(std::move(terms_[i++]));
  while (j < o.terms_.size()) merged.push_back(o.terms_[j++]);
  terms_ = std::move(merged);
  return *this;
}

WittElement WittElement::operator-() const {
  WittElement r(rank_);
  r.terms_.reserve(terms_.size());
  for (const auto& [g, d] : terms_) r.terms_.emplace_back(g, -d);
  return r;
}

WittElement WittElement::scaled(const Scalar& c) const {
  if (c.is_zero()) return WittElement(rank_);
  WittElement r(rank_);
  r.terms_.reserve(terms_.size());
  for (const auto& [g, d] : terms_) r.terms_.emplace_back(g, d.scaled(c));
  return r;
}

GroupAlgebraElement GroupAlgebraElement::term(GroupElement grade, Scalar coeff) {
  GroupAlgebraElement r(grade.rank());
  if (!coeff.is_zero()) r.terms_.emplace_back(std::move(grade), std::move(coeff));
  return r;
}

GroupAlgebraElement GroupAlgebraElement::one(std::size_t rank) {
  return term(GroupElement::zero(rank), Scalar(1));
}

Scalar GroupAlgebraElement::coeff_at(const GroupElement& grade) const {
  const auto it = std::lower_bound(
      terms_.begin(), terms_.end(), grade,
      [](const Term& t, const GroupElement& g) { return t.first < g; });
  if (it == terms_.end() || it->first != grade) return Scalar(0);
  return it->second;
}

void GroupAlgebraElement::add_term(const GroupElement& grade, const Scalar& coeff) {
  if (rank_ == 0 && terms_.empty()) rank_ = grade.rank();
  if (grade.rank() != rank_) throw DimensionError("GroupAlgebraElement::add_term: rank mismatch");
  if (coeff.is_zero()) return;
  const auto it = std::lower_bound(
      terms_.begin(), terms_.end(), grade,
      [](const Term& t, const GroupElement& g) { return t.first < g; });
  if (it == terms_.end() || it->first != grade) {
    terms_.insert(it, {grade, coeff});
    return;
  }
  it->second += coeff;
  if (it->second.is_zero()) terms_.erase(it);
}

GroupAlgebraElement& GroupAlgebraElement::operator+=(const GroupAlgebraElement& o) {
  if (o.is_zero()) return *this;
  if (is_zero() && rank_ == 0) rank_ = o.rank_;
  if (rank_ != o.rank_) throw DimensionError("GroupAlgebraElement+=: rank mismatch");
  for (const auto& [g, c] : o.terms_) add_term(g, c);
  return *this;
}

GroupAlgebraElement GroupAlgebraElement::operator-() const {
  GroupAlgebraElement r(rank_);
  r.terms_.reserve(terms_.size());
  for (const auto& [g, c] : terms_) r.terms_.emplace_back(g, -c);
  return r;
}

GroupAlgebraElement GroupAlgebraElement::scaled(const Scalar& c) const {
  if (c.is_zero()) return GroupAlgebraElement(rank_);
  GroupAlgebraElement r(rank_);
  r.terms_.reserve(terms_.size());
  for (const auto& [g, x] : terms_) r.terms_.emplace_back(g, x * c);
  return r;
}

WittElement bracket(const Space& W, const WittElement& u, const WittElement& v) {
  W.check_rank(u.is_zero() ? W.rank() : u.rank(), "bracket");
  W.check_rank(v.is_zero() ? W.rank() : v.rank(), "bracket");
  WittElement out(W.rank());
  for (const auto& [a, d1] : u.terms()) {
    for (const auto& [b, d2] : v.terms()) {
      const Scalar b_on_d1 = W.pair(b, d1);
      const Scalar a_on_d2 = W.pair(a, d2);
      if (b_on_d1.is_zero() && a_on_d2.is_zero()) continue;
      DVector dir = d2.scaled(b_on_d1);
      dir.add_scaled(d1, -a_on_d2);
      if (dir.is_zero()) continue;
      out.add_term(a + b, dir);
    }
  }
  return out;
}

WittElement grade_component(const WittElement& u, const GroupElement& a) {
  WittElement r(u.rank());
  if (const DVector* d = u.direction_at(a)) r.add_term(a, *d);
  return r;
}

GroupAlgebraElement divergence(const Space& W, const WittElement& u) {
  GroupAlgebraElement out(W.rank());
  for (const auto& [a, d] : u.terms()) out.add_term(a, W.pair(a, d));
  return out;
}

GroupAlgebraElement act_on_group_algebra(const Space& W, const WittElement& u,
                                         const GroupAlgebraElement& f) {
  GroupAlgebraElement out(W.rank());
  for (const auto& [a, d] : u.terms()) {
    for (const auto& [b, c] : f.terms()) {
      const Scalar coeff = W.pair(b, d) * c;
      if (!coeff.is_zero()) out.add_term(a + b, coeff);
    }
  }
  return out;
}

WittElement group_algebra_scale(const GroupAlgebraElement& f, const WittElement& u) {
  WittElement out(u.rank() ? u.rank() : f.rank());
  for (const auto& [b, c] : f.terms()) {
    for (const auto& [a, d] : u.terms()) {
      out.add_term(a + b, d.scaled(c));
    }
  }
  return out;
}

GroupAlgebraElement operator*(const GroupAlgebraElement& f, const GroupAlgebraElement& g) {
  GroupAlgebraElement out(f.rank() ? f.rank() : g.rank());
  for (const auto& [a, c1] : f.terms()) {
    for (const auto& [b, c2] : g.terms()) {
      out.add_term(a + b, c1 * c2);
    }
  }
  return out;
}

}  // namespace divfree
