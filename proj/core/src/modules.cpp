#include <divfree/modules.hpp>

#include <algorithm>
#include <deque>
#include <sstream>
#include <string>
#include <utility>

#include <divfree/errors.hpp>
#include <divfree/sampling.hpp>

namespace divfree {

const char* family_name(Family f) {
  switch (f) {
    case Family::Trivial:
      return "trivial";
    case Family::M:
      return "M";
    case Family::A:
      return "A";
    case Family::B:
      return "B";
  }
  return "?";
}

namespace {

void check_module_rank(std::size_t rank) {
  if (rank < 2) throw DomainError("ModuleSpec: rank must be at least 2");
}

void check_ab_params(const GroupElement& zeta, const Functional& eta, bool allow_zero_eta,
                     const char* family) {
  check_module_rank(zeta.rank());
  if (eta.rank() != zeta.rank()) throw DimensionError("ModuleSpec: zeta/eta rank mismatch");
  if (eta.is_zero() && !allow_zero_eta) {
    throw ContractError(std::string("family ") + family +
                        " with eta = 0 coincides with the zeta-shifted M family; pass "
                        "allow_zero_eta to construct the degenerate parameterization anyway");
  }
}

std::string grade_str(const GroupElement& g) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < g.rank(); ++i) {
    if (i) os << ',';
    os << g[i];
  }
  os << ')';
  return os.str();
}

}  // namespace

ModuleSpec ModuleSpec::trivial(std::size_t rank) {
  check_module_rank(rank);
  ModuleSpec s;
  s.family_ = Family::Trivial;
  s.rank_ = rank;
  return s;
}

ModuleSpec ModuleSpec::family_m(Functional mu) {
  check_module_rank(mu.rank());
  ModuleSpec s;
  s.family_ = Family::M;
  s.rank_ = mu.rank();
  s.mu_ = std::move(mu);
  return s;
}

ModuleSpec ModuleSpec::family_a(GroupElement zeta, Functional eta, bool allow_zero_eta) {
  check_ab_params(zeta, eta, allow_zero_eta, "A");
  ModuleSpec s;
  s.family_ = Family::A;
  s.rank_ = zeta.rank();
  s.zeta_ = std::move(zeta);
  s.eta_ = std::move(eta);
  return s;
}

ModuleSpec ModuleSpec::family_b(GroupElement zeta, Functional eta, bool allow_zero_eta) {
  check_ab_params(zeta, eta, allow_zero_eta, "B");
  ModuleSpec s;
  s.family_ = Family::B;
  s.rank_ = zeta.rank();
  s.zeta_ = std::move(zeta);
  s.eta_ = std::move(eta);
  return s;
}

const Functional& ModuleSpec::mu() const {
  if (family_ != Family::M) throw DomainError("ModuleSpec::mu: defined for family M only");
  return mu_;
}

const GroupElement& ModuleSpec::zeta() const {
  if (family_ != Family::A && family_ != Family::B) {
    throw DomainError("ModuleSpec::zeta: defined for families A and B only");
  }
  return zeta_;
}

const Functional& ModuleSpec::eta() const {
  if (family_ != Family::A && family_ != Family::B) {
    throw DomainError("ModuleSpec::eta: defined for families A and B only");
  }
  return eta_;
}

GroupElement ModuleSpec::special_grade() const { return -zeta(); }

ModuleVector ModuleVector::basis(const GroupElement& grade) {
  ModuleVector v(grade.rank());
  v.terms_.emplace_back(grade, Scalar(1));
  return v;
}

Scalar ModuleVector::coeff_at(const GroupElement& grade) const {
  const auto it = std::lower_bound(
      terms_.begin(), terms_.end(), grade,
      [](const Term& t, const GroupElement& g) { return t.first < g; });
  if (it == terms_.end() || it->first != grade) return Scalar(0);
  return it->second;
}

void ModuleVector::add_term(const GroupElement& grade, const Scalar& coeff) {
  if (rank_ == 0 && terms_.empty()) rank_ = grade.rank();
  if (grade.rank() != rank_) throw DimensionError("ModuleVector::add_term: rank mismatch");
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

ModuleVector& ModuleVector::operator+=(const ModuleVector& o) {
  if (o.is_zero()) return *this;
  if (is_zero() && rank_ == 0) rank_ = o.rank_;
  if (rank_ != o.rank_) throw DimensionError("ModuleVector+=: rank mismatch");
  for (const auto& [g, c] : o.terms_) add_term(g, c);
  return *this;
}

ModuleVector ModuleVector::operator-() const {
  ModuleVector r(rank_);
  r.terms_.reserve(terms_.size());
  for (const auto& [g, c] : terms_) r.terms_.emplace_back(g, -c);
  return r;
}

ModuleVector ModuleVector::scaled(const Scalar& c) const {
  if (c.is_zero()) return ModuleVector(rank_);
  ModuleVector r(rank_);
  r.terms_.reserve(terms_.size());
  for (const auto& [g, x] : terms_) r.terms_.emplace_back(g, x * c);
  return r;
}

Scalar action_coefficient(const Space& W, const ModuleSpec& spec, const GroupElement& a,
                          const DVector& d, const GroupElement& b) {
  W.check_rank(spec.rank(), "action_coefficient");
  W.check_rank(a.rank(), "action_coefficient");
  W.check_rank(d.rank(), "action_coefficient");
  W.check_rank(b.rank(), "action_coefficient");
  if (a.is_zero()) {
    throw ContractError("action_coefficient: grade-zero elements are outside the subalgebra");
  }
  if (!W.pair(a, d).is_zero()) {
    throw ContractError("action_coefficient: direction is not in the kernel of its grade");
  }
  switch (spec.family()) {
    case Family::Trivial:
      return Scalar(0);
    case Family::M:
      return W.pair(b, d) + spec.mu().eval(d);
    case Family::A:
      if (b == spec.special_grade()) return spec.eta().eval(d);
      return W.pair(b + spec.zeta(), d);
    case Family::B:
      if (a + b == spec.special_grade()) return spec.eta().eval(d);
      return W.pair(b + spec.zeta(), d);
  }
  throw DomainError("action_coefficient: unknown family");
}

ModuleVector act(const Space& W, const ModuleSpec& spec, const WittElement& g,
                 const ModuleVector& m, SCheck check) {
  W.check_rank(spec.rank(), "act");
  if (!g.is_zero()) W.check_rank(g.rank(), "act");
  if (!m.is_zero()) W.check_rank(m.rank(), "act");
  if (check == SCheck::Validate && !is_in_s(W, g)) {
    throw ContractError("act: element is not in the divergence-free subalgebra");
  }
  ModuleVector out(W.rank());
  for (const auto& [a, d] : g.terms()) {
    for (const auto& [b, c] : m.terms()) {
      const Scalar coeff = action_coefficient(W, spec, a, d, b) * c;
      if (!coeff.is_zero()) out.add_term(a + b, coeff);
    }
  }
  return out;
}

ModuleVector act_via(const Space& W, const TermAction& action, const WittElement& g,
                     const ModuleVector& m) {
  if (!g.is_zero()) W.check_rank(g.rank(), "act_via");
  if (!m.is_zero()) W.check_rank(m.rank(), "act_via");
  if (!is_in_s(W, g)) {
    throw ContractError("act_via: element is not in the divergence-free subalgebra");
  }
  ModuleVector out(W.rank());
  for (const auto& [a, d] : g.terms()) {
    for (const auto& [b, c] : m.terms()) {
      const Scalar coeff = action(a, d, b) * c;
      if (!coeff.is_zero()) out.add_term(a + b, coeff);
    }
  }
  return out;
}

namespace {

// Shared commutator sweep: checks act([u,v]) = act(u)act(v) - act(v)act(u)
// for every ordered generator pair against every basis vector in the window.
template <typename ActFn>
void axiom_generator_sweep(const Space& W, const ActFn& apply, int radius, AxiomReport& report) {
  if (radius < 0) throw DomainError("verify_module_axiom: radius must be nonnegative");
  const GeneratorSet gens = GeneratorSet::standard(W);
  const std::vector<GroupElement> window = box_grades(W.rank(), radius);

  std::vector<WittElement> gen_witt;
  gen_witt.reserve(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) gen_witt.push_back(gens[i].to_witt());

  for (std::size_t i = 0; i < gen_witt.size(); ++i) {
    for (std::size_t j = 0; j < gen_witt.size(); ++j) {
      const WittElement uv = bracket(W, gen_witt[i], gen_witt[j]);
      for (const GroupElement& b : window) {
        const ModuleVector m = ModuleVector::basis(b);
        const ModuleVector lhs = apply(uv, m);
        ModuleVector rhs = apply(gen_witt[i], apply(gen_witt[j], m));
        rhs += -apply(gen_witt[j], apply(gen_witt[i], m));
        ++report.checks;
        if (!(lhs == rhs)) {
          ++report.failures;
          if (report.first_counterexample.empty()) {
            report.first_counterexample = "generator pair (" + std::to_string(i) + ", " +
                                          std::to_string(j) + ") on v_" + grade_str(b);
          }
        }
      }
    }
  }
}

}  // namespace

AxiomReport verify_module_axiom(const Space& W, const ModuleSpec& spec, int radius,
                                int extra_samples, std::uint64_t seed) {
  W.check_rank(spec.rank(), "verify_module_axiom");
  AxiomReport report;
  const auto apply = [&](const WittElement& g, const ModuleVector& m) {
    return act(W, spec, g, m, SCheck::SkipValidated);
  };
  axiom_generator_sweep(W, apply, radius, report);

  Sampler rng(seed);
  for (int s = 0; s < extra_samples; ++s) {
    const WittElement u = rng.s_element(W, radius + 1, 3);
    const WittElement v = rng.s_element(W, radius + 1, 3);
    const ModuleVector m = rng.module_vector(W.rank(), radius, 3);
    const ModuleVector lhs = apply(bracket(W, u, v), m);
    ModuleVector rhs = apply(u, apply(v, m));
    rhs += -apply(v, apply(u, m));
    ++report.checks;
    if (!(lhs == rhs)) {
      ++report.failures;
      if (report.first_counterexample.empty()) {
        report.first_counterexample =
            "random pair sample " + std::to_string(s) + " (seed " + std::to_string(seed) + ")";
      }
    }
  }
  return report;
}

AxiomReport verify_module_axiom(const Space& W, const TermAction& action, int radius) {
  AxiomReport report;
  const auto apply = [&](const WittElement& g, const ModuleVector& m) {
    return act_via(W, action, g, m);
  };
  axiom_generator_sweep(W, apply, radius, report);
  return report;
}

std::set<GroupElement> submodule_orbit(const Space& W, const ModuleSpec& spec,
                                       const GroupElement& seed, int radius) {
  W.check_rank(spec.rank(), "submodule_orbit");
  W.check_rank(seed.rank(), "submodule_orbit");
  if (radius < 0) throw DomainError("submodule_orbit: radius must be nonnegative");
  const GeneratorSet gens = GeneratorSet::standard(W);
  std::set<GroupElement> seen{seed};
  std::deque<GroupElement> queue{seed};
  while (!queue.empty()) {
    const GroupElement b = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const GroupElement target = gens[i].grade + b;
      if (target.inf_norm() > radius || seen.count(target) > 0) continue;
      if (action_coefficient(W, spec, gens[i].grade, gens[i].direction, b).is_zero()) continue;
      seen.insert(target);
      queue.push_back(target);
    }
  }
  return seen;
}

bool annihilator_check(const Space& W, const ModuleSpec& spec, const GroupElement& grade,
                       const GeneratorSet& gens) {
  W.check_rank(spec.rank(), "annihilator_check");
  W.check_rank(grade.rank(), "annihilator_check");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (!action_coefficient(W, spec, gens[i].grade, gens[i].direction, grade).is_zero()) {
      return false;
    }
  }
  return true;
}

}  // namespace divfree
