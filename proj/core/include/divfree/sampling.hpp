#pragma once

#include <cstdint>
#include <random>

#include <divfree/modules.hpp>

namespace divfree {

// Deterministic generator of random domain objects for property checks and
// fuzz sweeps.  All draws are reproducible from the seed on a fixed platform.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  std::int64_t int_in(std::int64_t lo, std::int64_t hi);
  Scalar scalar(int max_abs_num = 6, int max_den = 4);
  Scalar nonzero_scalar(int max_abs_num = 6, int max_den = 4);
  GroupElement grade(std::size_t rank, std::int64_t radius);
  GroupElement nonzero_grade(std::size_t rank, std::int64_t radius);
  DVector direction(std::size_t rank);
  DVector nonzero_direction(std::size_t rank);
  Functional functional(std::size_t rank);
  Functional nonzero_functional(std::size_t rank);

  // A nonzero direction in the kernel of emb(a).
  DVector kernel_direction(const Space& W, const GroupElement& a);
  // A divergence-free element with up to max_terms nonzero-grade terms.
  WittElement s_element(const Space& W, std::int64_t radius, int max_terms);
  WittElement witt_element(const Space& W, std::int64_t radius, int max_terms);
  GroupAlgebraElement group_algebra_element(const Space& W, std::int64_t radius, int max_terms);
  ModuleVector module_vector(std::size_t rank, std::int64_t radius, int max_terms);

  // mu = emb(g) for a random grade when integral, otherwise emb(g) shifted by
  // a guaranteed non-integral multiple of a basis grade.
  ModuleSpec spec_m(const Space& W, bool integral, std::int64_t mu_radius = 2);
  ModuleSpec spec_a(const Space& W, std::int64_t zeta_radius = 2);
  ModuleSpec spec_b(const Space& W, std::int64_t zeta_radius = 2);

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace divfree
