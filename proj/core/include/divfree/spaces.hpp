#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include <divfree/scalar.hpp>

namespace divfree {

// A grade: an element of the free abelian group of finite rank, written
// additively in coordinates.
class GroupElement {
 public:
  GroupElement() = default;
  explicit GroupElement(std::vector<std::int64_t> coords) : coords_(std::move(coords)) {}
  static GroupElement zero(std::size_t rank) { return GroupElement(std::vector<std::int64_t>(rank, 0)); }
  static GroupElement unit(std::size_t rank, std::size_t axis);

  std::size_t rank() const { return coords_.size(); }
  std::int64_t operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<std::int64_t>& coords() const { return coords_; }
  bool is_zero() const;
  std::int64_t inf_norm() const;

  GroupElement operator+(const GroupElement& o) const;
  GroupElement operator-(const GroupElement& o) const;
  GroupElement operator-() const;
  GroupElement& operator+=(const GroupElement& o);

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend std::strong_ordering operator<=>(const GroupElement& a, const GroupElement& b) {
    return a.coords_ <=> b.coords_;
  }

 private:
  std::vector<std::int64_t> coords_;
};

// A direction: an element of the derivation space D, in coordinates with
// respect to the standard basis e_1, ..., e_n.
class DVector {
 public:
  DVector() = default;
  explicit DVector(std::vector<Scalar> coords) : coords_(std::move(coords)) {}
  static DVector zero(std::size_t rank) { return DVector(std::vector<Scalar>(rank)); }
  static DVector unit(std::size_t rank, std::size_t axis);

  std::size_t rank() const { return coords_.size(); }
  const Scalar& operator[](std::size_t i) const { return coords_[i]; }
  Scalar& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<Scalar>& coords() const { return coords_; }
  bool is_zero() const;

  DVector operator+(const DVector& o) const;
  DVector operator-(const DVector& o) const;
  DVector operator-() const;
  DVector& operator+=(const DVector& o);
  DVector scaled(const Scalar& c) const;
  void add_scaled(const DVector& o, const Scalar& c);

  friend bool operator==(const DVector&, const DVector&) = default;

 private:
  std::vector<Scalar> coords_;
};

// A linear functional on D, in coordinates dual to e_1, ..., e_n.
class Functional {
 public:
  Functional() = default;
  explicit Functional(std::vector<Scalar> coords) : coords_(std::move(coords)) {}
  static Functional zero(std::size_t rank) { return Functional(std::vector<Scalar>(rank)); }

  std::size_t rank() const { return coords_.size(); }
  const Scalar& operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<Scalar>& coords() const { return coords_; }
  bool is_zero() const;

  Scalar eval(const DVector& d) const;

  Functional operator+(const Functional& o) const;
  Functional operator-(const Functional& o) const;
  Functional operator-() const;
  Functional scaled(const Scalar& c) const;

  friend bool operator==(const Functional&, const Functional&) = default;

 private:
  std::vector<Scalar> coords_;
};

// The nondegenerate pairing Gamma x D -> F, given by an invertible matrix P:
// embedding a grade alpha yields the functional d |-> alpha^T P d.
class Pairing {
 public:
  static Pairing identity(std::size_t rank);
  explicit Pairing(std::vector<std::vector<Scalar>> rows);

  std::size_t rank() const { return rows_.size(); }
  bool is_identity() const { return identity_; }
  const std::vector<std::vector<Scalar>>& rows() const { return rows_; }

  Functional embed(const GroupElement& a) const;
  // The integral preimage of f under embed, when one exists.
  std::optional<GroupElement> unembed(const Functional& f) const;
  // The direction dual to axis j: embed(unit(i)) evaluates to delta_ij on it.
  DVector dual_direction(std::size_t j) const;

 private:
  std::vector<std::vector<Scalar>> rows_;
  std::vector<std::vector<Scalar>> inv_;  // P^-1
  bool identity_ = false;
};

// The ambient datum (Gamma, D, pairing) every algebra operation works over.
class Space {
 public:
  explicit Space(Pairing pairing);
  static Space standard(std::size_t rank) { return Space(Pairing::identity(rank)); }

  std::size_t rank() const { return pairing_.rank(); }
  const Pairing& pairing() const { return pairing_; }

  Functional grade_functional(const GroupElement& a) const { return pairing_.embed(a); }
  // embed(a) evaluated on d, with a fast path for the identity pairing.
  Scalar pair(const GroupElement& a, const DVector& d) const;
  const DVector& dual_direction(std::size_t j) const { return duals_[j]; }

  void check_rank(std::size_t r, const char* what) const;

 private:
  Pairing pairing_;
  std::vector<DVector> duals_;
};

// Reduced row echelon form in place; returns the pivot column indices.
std::vector<std::size_t> rref_in_place(std::vector<std::vector<Scalar>>& rows);

// Canonical basis of the joint kernel of the given functionals.  Each basis
// vector is scaled so its first nonzero coordinate is 1.
std::vector<DVector> kernel_of_rows(std::size_t rank, const std::vector<Functional>& rows);
std::vector<DVector> kernel_basis(const Functional& f);

// True if candidate lies in the span of the (independent) given vectors.
bool in_span(const std::vector<DVector>& basis, const DVector& candidate);

// All grades g with ||g||_inf <= radius, in lexicographic order.
std::vector<GroupElement> box_grades(std::size_t rank, std::int64_t radius);

}  // namespace divfree
