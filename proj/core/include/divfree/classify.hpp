#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <divfree/modules.hpp>

namespace divfree {

// Windowed record of the generator action on a multiplicity-free module: the
// coefficient c in g_i . v_beta = c v_{beta + grade(g_i)} for every standard
// generator index i and window grade beta whose target grade stays in the
// window.  Absent entries mean coefficient zero.
class ActionTable {
 public:
  ActionTable() = default;
  ActionTable(std::size_t rank, int radius);

  std::size_t rank() const { return rank_; }
  int radius() const { return radius_; }
  std::size_t generator_count() const { return generator_count_; }
  bool in_window(const GroupElement& b) const;
  // True when both beta and the target beta + grade(gen) lie in the window,
  // i.e. when the table's entry at (gen, beta) is meaningful.
  bool has_room(std::size_t gen, const GroupElement& b) const;

  Scalar get(std::size_t gen, const GroupElement& b) const;
  void set(std::size_t gen, const GroupElement& b, const Scalar& c);

  const std::map<std::pair<std::size_t, GroupElement>, Scalar>& entries() const {
    return entries_;
  }

  friend bool operator==(const ActionTable&, const ActionTable&) = default;

 private:
  std::size_t rank_ = 0;
  int radius_ = 0;
  std::size_t generator_count_ = 0;
  std::map<std::pair<std::size_t, GroupElement>, Scalar> entries_;
};

// Evaluates every standard generator on every window grade with room and
// records the nonzero coefficients.
ActionTable record_action_table(const Space& W, const ModuleSpec& spec, int radius);

// Thrown by classify_table when the table violates a bracket identity every
// module action must satisfy; carries the violating generator tuple and the
// source grade where the identity fails.
class TableInconsistency : public Error {
 public:
  TableInconsistency(const std::string& what, std::vector<std::size_t> generators,
                     GroupElement grade)
      : Error(what), generators_(std::move(generators)), grade_(std::move(grade)) {}

  const std::vector<std::size_t>& generators() const { return generators_; }
  const GroupElement& grade() const { return grade_; }

 private:
  std::vector<std::size_t> generators_;
  GroupElement grade_;
};

enum class FitKind { TrivialFit, MFit, AFit, BFit, NoFit };

const char* fit_kind_name(FitKind k);

// One table entry that disagrees with the fitted family on the re-sweep.
struct TableResidual {
  std::size_t gen = 0;
  GroupElement grade;
  Scalar table_value;
  Scalar fitted_value;
};

struct FitResult {
  FitKind verdict = FitKind::NoFit;
  // The fitted parameters; a placeholder trivial spec when verdict is NoFit.
  ModuleSpec spec;
  // Empty on every non-NoFit verdict; on NoFit, the mismatches of the closest
  // attempted fit (fewest residuals, earliest attempt on ties).
  std::vector<TableResidual> residuals;
};

// Fits the table to one of the four families.  First rejects tables that
// violate generator bracket identities (throws TableInconsistency), then:
// all-zero table -> TrivialFit; otherwise extracts a generic functional from
// designated rows (falling back to later rows when the first is special),
// scans for a single deviating source grade (A-pattern) or target grade
// (B-pattern), and re-sweeps the whole window against the fitted family.
// Any surviving mismatch means NoFit.
FitResult classify_table(const Space& W, const ActionTable& table);

// Constancy check for the composite x^{-sigma} d' . x^{sigma} d . v_{nu+i*sigma}.
struct Lemma52Report {
  std::vector<Scalar> values;  // c_i for i = -range .. range
  bool constant = false;
  Scalar c;  // the common value, when constant
  // Set when c is a nonzero perfect rational square: the rescaled basis with
  // a = sqrt(c) exists over the working field and both step relations were
  // re-verified on it.
  bool rescale_applicable = false;
  Scalar a;
  bool rescale_verified = false;
  std::uint64_t checks = 0;

  bool ok() const { return constant && (!rescale_applicable || rescale_verified); }
};

Lemma52Report lemma52_check(const Space& W, const ModuleSpec& spec, const GroupElement& sigma,
                            const DVector& d, const DVector& dprime, const GroupElement& nu,
                            int range);

// Direction choices for the two-parameter grid check: d1 spans ker(sigma) inter
// ker(rho); d2 completes a basis of ker(sigma); d3 completes one of ker(rho).
struct Lemma53Basis {
  DVector d1;
  DVector d2;
  DVector d3;
};

Lemma53Basis lemma53_default_basis(const Space& W, const GroupElement& sigma,
                                   const GroupElement& rho);

// Grid check over nu + i*sigma + k*rho for i, k in [-range, range]: builds the
// rescaled grid basis, extracts the constants a1, b1, a2, a3, d, and verifies
// the axis relations, the diagonal relation, the two mixed-coefficient
// formulas, and the squares relation a1^2 = b1^2 = d^2.
struct Lemma53Report {
  // False when the two nonvanishing hypotheses fail at nu, when a needed
  // square root does not exist over the rationals, or when a grid action
  // vanishes where the construction needs it; note says which.
  bool hypotheses_met = false;
  std::string note;
  Scalar a1, b1, a2, a3, d;
  bool axis_relations_ok = false;     // x^{+-sigma} d1 and x^{+-rho} d1 rows
  bool diagonal_relation_ok = false;  // x^{sigma+rho} d1 row
  bool sigma_formula_ok = false;      // x^{+-sigma} d2 coefficient formula
  bool rho_formula_ok = false;        // x^{+-rho} d3 coefficient formula
  bool squares_ok = false;            // a1^2 = b1^2 = d^2
  std::uint64_t checks = 0;

  bool ok() const {
    return hypotheses_met && axis_relations_ok && diagonal_relation_ok && sigma_formula_ok &&
           rho_formula_ok && squares_ok;
  }
};

Lemma53Report lemma53_check(const Space& W, const ModuleSpec& spec, const GroupElement& sigma,
                            const GroupElement& rho, const GroupElement& nu,
                            const Lemma53Basis& basis, int range = 3);

}  // namespace divfree
