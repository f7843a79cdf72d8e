#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include <divfree/salgebra.hpp>

namespace divfree {

enum class Family { Trivial, M, A, B };

const char* family_name(Family f);

// Parameters of one multiplicity-free graded module over the divergence-free
// subalgebra.  All four families put a one-dimensional component v_beta at
// every grade beta; they differ in the action coefficients:
//
//   Trivial:  every generator acts as zero.
//   M(mu):    x^a d . v_b = (emb(b) + mu)(d) v_{a+b}.
//   A(z,eta): as M(emb(z)) except x^a d . v_{-z} = eta(d) v_{a-z}.
//   B(z,eta): as M(emb(z)) except x^a d . v_{-a-z} = eta(d) v_{-z}.
//
// A and B with eta = 0 degenerate to M(emb(z)); constructing them requires an
// explicit opt-in so the degenerate parameterization is never picked up by
// accident.
class ModuleSpec {
 public:
  static ModuleSpec trivial(std::size_t rank);
  static ModuleSpec family_m(Functional mu);
  static ModuleSpec family_a(GroupElement zeta, Functional eta, bool allow_zero_eta = false);
  static ModuleSpec family_b(GroupElement zeta, Functional eta, bool allow_zero_eta = false);

  Family family() const { return family_; }
  std::size_t rank() const { return rank_; }
  const Functional& mu() const;        // M only
  const GroupElement& zeta() const;    // A and B only
  const Functional& eta() const;       // A and B only
  // The distinguished grade -zeta of the A and B families.
  GroupElement special_grade() const;

  friend bool operator==(const ModuleSpec&, const ModuleSpec&) = default;

 private:
  Family family_ = Family::Trivial;
  std::size_t rank_ = 0;
  Functional mu_;
  GroupElement zeta_;
  Functional eta_;
};

// A vector in a multiplicity-free graded module: finitely many coefficients
// c_beta on the basis vectors v_beta, kept sorted by grade with no zeros.
class ModuleVector {
 public:
  using Term = std::pair<GroupElement, Scalar>;

  ModuleVector() = default;
  explicit ModuleVector(std::size_t rank) : rank_(rank) {}
  static ModuleVector basis(const GroupElement& grade);

  std::size_t rank() const { return rank_; }
  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }
  Scalar coeff_at(const GroupElement& grade) const;

  ModuleVector& operator+=(const ModuleVector& o);
  friend ModuleVector operator+(ModuleVector a, const ModuleVector& b) { return a += b; }
  friend ModuleVector operator-(ModuleVector a, const ModuleVector& b) { return a += -b; }
  ModuleVector operator-() const;
  ModuleVector scaled(const Scalar& c) const;
  void add_term(const GroupElement& grade, const Scalar& coeff);

  friend bool operator==(const ModuleVector&, const ModuleVector&) = default;

 private:
  std::size_t rank_ = 0;
  std::vector<Term> terms_;
};

// The coefficient c in (x^a d) . v_b = c v_{a+b}.  Requires d in ker(emb(a))
// and a != 0, i.e. x^a d must be a homogeneous divergence-free element.
Scalar action_coefficient(const Space& W, const ModuleSpec& spec, const GroupElement& a,
                          const DVector& d, const GroupElement& b);

enum class SCheck { Validate, SkipValidated };

// Applies a divergence-free element g to a module vector.  Membership of g
// in the subalgebra is validated unless the caller vouches for it.
ModuleVector act(const Space& W, const ModuleSpec& spec, const WittElement& g,
                 const ModuleVector& m, SCheck check = SCheck::Validate);

// A single homogeneous action rule, extended bilinearly by act_via.  Used to
// replay recorded or deliberately perturbed actions through the same checks
// as the built-in families.
using TermAction =
    std::function<Scalar(const GroupElement& a, const DVector& d, const GroupElement& b)>;

ModuleVector act_via(const Space& W, const TermAction& action, const WittElement& g,
                     const ModuleVector& m);

struct AxiomReport {
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  std::string first_counterexample;
  bool ok() const { return failures == 0; }
};

// Checks act([u,v]) = act(u) act(v) - act(v) act(u) for every ordered pair of
// standard generators against every basis vector in the window, plus
// extra_samples random multi-term pairs.
AxiomReport verify_module_axiom(const Space& W, const ModuleSpec& spec, int radius,
                                int extra_samples = 0, std::uint64_t seed = 0);
AxiomReport verify_module_axiom(const Space& W, const TermAction& action, int radius);

// Grades reachable from the seed basis vector by repeatedly applying standard
// generators with nonzero coefficients, never leaving the window.
std::set<GroupElement> submodule_orbit(const Space& W, const ModuleSpec& spec,
                                       const GroupElement& seed, int radius);

// True when every generator in gens annihilates v_grade.
bool annihilator_check(const Space& W, const ModuleSpec& spec, const GroupElement& grade,
                       const GeneratorSet& gens);

}  // namespace divfree
