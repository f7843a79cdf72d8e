#pragma once

// Shared shorthand for the test suites: compact constructors for grades,
// directions, and functionals, and the spaces most cases run over.

#include <cstdint>
#include <initializer_list>
#include <vector>

#include <divfree/spaces.hpp>

namespace testutil {

inline divfree::GroupElement ge(std::initializer_list<std::int64_t> xs) {
  return divfree::GroupElement(std::vector<std::int64_t>(xs));
}

inline divfree::DVector dv(std::initializer_list<std::int64_t> xs) {
  std::vector<divfree::Scalar> c;
  for (auto x : xs) c.emplace_back(x);
  return divfree::DVector(std::move(c));
}

inline divfree::DVector dvq(std::initializer_list<divfree::Scalar> xs) {
  return divfree::DVector(std::vector<divfree::Scalar>(xs));
}

inline divfree::Functional fn(std::initializer_list<std::int64_t> xs) {
  std::vector<divfree::Scalar> c;
  for (auto x : xs) c.emplace_back(x);
  return divfree::Functional(std::move(c));
}

inline divfree::Functional fnq(std::initializer_list<divfree::Scalar> xs) {
  return divfree::Functional(std::vector<divfree::Scalar>(xs));
}

inline divfree::Space standard3() { return divfree::Space::standard(3); }

// An invertible non-identity pairing with integer entries and unit
// determinant, so embed() still has integral preimages of embedded grades.
inline divfree::Pairing skew_pairing3() {
  using divfree::Scalar;
  std::vector<std::vector<Scalar>> rows{
      {Scalar(1), Scalar(1), Scalar(0)},
      {Scalar(0), Scalar(1), Scalar(0)},
      {Scalar(0), Scalar(0), Scalar(1)},
  };
  return divfree::Pairing(std::move(rows));
}

// An invertible pairing with a fractional entry.
inline divfree::Pairing fractional_pairing3() {
  using divfree::Scalar;
  std::vector<std::vector<Scalar>> rows{
      {Scalar(2), Scalar(0), Scalar(0)},
      {Scalar(0), Scalar(1), Scalar(1, 2)},
      {Scalar(0), Scalar(0), Scalar(1)},
  };
  return divfree::Pairing(std::move(rows));
}

}  // namespace testutil
