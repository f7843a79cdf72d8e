#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <divfree/modules.hpp>

namespace divfree {

// One reason a candidate shift admits no graded intertwiner on the window:
// either an edge whose two action coefficients disagree about vanishing, or a
// closed cycle of ratio constraints whose product is not 1.
struct IntertwinerCertificate {
  enum class Kind { ZeroMismatch, InconsistentCycle };

  struct CycleStep {
    GroupElement from;
    GroupElement to;
    Scalar ratio;  // the factor c_to / c_from forced by this step
  };

  Kind kind = Kind::ZeroMismatch;
  GroupElement shift;

  // ZeroMismatch: the violating edge.
  GroupElement source;        // grade of the domain basis vector
  std::size_t generator = 0;  // index into the standard generator set
  Scalar domain_coefficient;
  Scalar codomain_coefficient;

  // InconsistentCycle: the closed loop and its ratio product (which is != 1).
  std::vector<CycleStep> cycle;
  Scalar cycle_product;
};

enum class IntertwinerOutcome { Found, NoneOnWindow };

const char* intertwiner_outcome_name(IntertwinerOutcome o);

// Result of the graded-intertwiner search phi(v_beta) = c_beta w_{beta+shift}.
// Found means every window constraint holds exactly with all c_beta nonzero;
// NoneOnWindow carries one certificate per candidate shift tried.  Both
// outcomes speak only about the window: Found is a desk-scale witness and
// NoneOnWindow a finite non-isomorphism certificate, not a global proof.
struct IntertwinerResult {
  IntertwinerOutcome outcome = IntertwinerOutcome::NoneOnWindow;
  int window_radius = 0;
  GroupElement shift;                      // meaningful on Found
  std::map<GroupElement, Scalar> scalars;  // c_beta over the window, on Found
  std::size_t free_scalars = 0;  // connected components = independent scaling choices
  std::vector<IntertwinerCertificate> certificates;  // one per failed shift
};

// Searches candidate shifts in lexicographic order over the shift box
// (defaulting to the window radius when shift_radius < 0).  For each shift it
// builds the ratio-constraint graph over window grades, propagates c := 1
// from the lexicographically smallest grade with a nonzero outgoing action
// coefficient (each further component is seeded the same way), and returns
// the first consistent assignment.
IntertwinerResult solve_intertwiner(const Space& W, const ModuleSpec& domain,
                                    const ModuleSpec& codomain, int window_radius,
                                    int shift_radius = -1);

// Independent equivariance re-check phi(g.v) = g.phi(v) for every standard
// generator and every window-interior grade, using the module actions
// directly rather than the solver's bookkeeping.
AxiomReport verify_intertwiner(const Space& W, const ModuleSpec& domain,
                               const ModuleSpec& codomain, const GroupElement& shift,
                               const std::map<GroupElement, Scalar>& scalars, int window_radius);

}  // namespace divfree
