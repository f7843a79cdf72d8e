#include <divfree/sampling.hpp>

#include <divfree/errors.hpp>

namespace divfree {

std::int64_t Sampler::int_in(std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
}

Scalar Sampler::scalar(int max_abs_num, int max_den) {
  return Scalar(int_in(-max_abs_num, max_abs_num), int_in(1, max_den));
}

Scalar Sampler::nonzero_scalar(int max_abs_num, int max_den) {
  while (true) {
    Scalar s = scalar(max_abs_num, max_den);
    if (!s.is_zero()) return s;
  }
}

GroupElement Sampler::grade(std::size_t rank, std::int64_t radius) {
  std::vector<std::int64_t> c(rank);
  for (auto& x : c) x = int_in(-radius, radius);
  return GroupElement(std::move(c));
}

GroupElement Sampler::nonzero_grade(std::size_t rank, std::int64_t radius) {
  while (true) {
    GroupElement g = grade(rank, radius);
    if (!g.is_zero()) return g;
  }
}

DVector Sampler::direction(std::size_t rank) {
  std::vector<Scalar> c(rank);
  for (auto& x : c) x = scalar();
  return DVector(std::move(c));
}

DVector Sampler::nonzero_direction(std::size_t rank) {
  while (true) {
    DVector d = direction(rank);
    if (!d.is_zero()) return d;
  }
}

Functional Sampler::functional(std::size_t rank) {
  std::vector<Scalar> c(rank);
  for (auto& x : c) x = scalar();
  return Functional(std::move(c));
}

Functional Sampler::nonzero_functional(std::size_t rank) {
  while (true) {
    Functional f = functional(rank);
    if (!f.is_zero()) return f;
  }
}

DVector Sampler::kernel_direction(const Space& W, const GroupElement& a) {
  const auto basis = kernel_basis(W.grade_functional(a));
  if (basis.empty()) throw DomainError("Sampler: kernel is trivial");
  while (true) {
    DVector d = DVector::zero(W.rank());
    for (const auto& b : basis) d.add_scaled(b, scalar(4, 3));
    if (!d.is_zero()) return d;
  }
}

WittElement Sampler::s_element(const Space& W, std::int64_t radius, int max_terms) {
  while (true) {
    WittElement u(W.rank());
    const int terms = static_cast<int>(int_in(1, max_terms));
    for (int t = 0; t < terms; ++t) {
      const GroupElement g = nonzero_grade(W.rank(), radius);
      u.add_term(g, kernel_direction(W, g));
    }
    if (!u.is_zero()) return u;
  }
}

WittElement Sampler::witt_element(const Space& W, std::int64_t radius, int max_terms) {
  while (true) {
    WittElement u(W.rank());
    const int terms = static_cast<int>(int_in(1, max_terms));
    for (int t = 0; t < terms; ++t) u.add_term(grade(W.rank(), radius), direction(W.rank()));
    if (!u.is_zero()) return u;
  }
}

GroupAlgebraElement Sampler::group_algebra_element(const Space& W, std::int64_t radius,
                                                   int max_terms) {
  while (true) {
    GroupAlgebraElement f(W.rank());
    const int terms = static_cast<int>(int_in(1, max_terms));
    for (int t = 0; t < terms; ++t) f.add_term(grade(W.rank(), radius), scalar());
    if (!f.is_zero()) return f;
  }
}

ModuleVector Sampler::module_vector(std::size_t rank, std::int64_t radius, int max_terms) {
  while (true) {
    ModuleVector m(rank);
    const int terms = static_cast<int>(int_in(1, max_terms));
    for (int t = 0; t < terms; ++t) m.add_term(grade(rank, radius), scalar());
    if (!m.is_zero()) return m;
  }
}

ModuleSpec Sampler::spec_m(const Space& W, bool integral, std::int64_t mu_radius) {
  const GroupElement g = grade(W.rank(), mu_radius);
  Functional mu = W.grade_functional(g);
  if (!integral) {
    // Shift by (p/q) emb(eps_l) with q > 1, so the preimage has a
    // non-integer coordinate no matter what the pairing is.
    const std::size_t l = static_cast<std::size_t>(int_in(0, W.rank() - 1));
    const std::int64_t q = int_in(2, 5);
    std::int64_t p = int_in(1, q - 1);
    if (int_in(0, 1) == 1) p = -p;
    const Functional step = W.grade_functional(GroupElement::unit(W.rank(), l));
    mu = mu + step.scaled(Scalar(p, q));
  }
  return ModuleSpec::family_m(std::move(mu));
}

ModuleSpec Sampler::spec_a(const Space& W, std::int64_t zeta_radius) {
  return ModuleSpec::family_a(grade(W.rank(), zeta_radius), nonzero_functional(W.rank()));
}

ModuleSpec Sampler::spec_b(const Space& W, std::int64_t zeta_radius) {
  return ModuleSpec::family_b(grade(W.rank(), zeta_radius), nonzero_functional(W.rank()));
}

}  // namespace divfree
