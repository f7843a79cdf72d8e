#include <divfree/classify.hpp>

#include <algorithm>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include <divfree/errors.hpp>

namespace divfree {

namespace {

std::string grade_str(const GroupElement& g) {
  std::string s = "(";
  for (std::size_t i = 0; i < g.rank(); ++i) {
    if (i) s += ',';
    s += std::to_string(g[i]);
  }
  s += ')';
  return s;
}

GroupElement scaled_grade(const GroupElement& g, std::int64_t k) {
  std::vector<std::int64_t> c = g.coords();
  for (auto& x : c) x *= k;
  return GroupElement(std::move(c));
}

bool z_independent(const GroupElement& a, const GroupElement& b) {
  for (std::size_t i = 0; i < a.rank(); ++i) {
    for (std::size_t j = i + 1; j < a.rank(); ++j) {
      if (a[i] * b[j] - a[j] * b[i] != 0) return true;
    }
  }
  return false;
}

// The scalar c with v = c*w, when it exists and w != 0.
std::optional<Scalar> proportionality(const DVector& v, const DVector& w) {
  std::size_t pivot = w.rank();
  for (std::size_t k = 0; k < w.rank(); ++k) {
    if (!w[k].is_zero()) {
      pivot = k;
      break;
    }
  }
  if (pivot == w.rank()) return std::nullopt;
  const Scalar c = v[pivot] / w[pivot];
  if (v == w.scaled(c)) return c;
  return std::nullopt;
}

// Index of the generator x^{sign * eps_axis} d_dir in the standard set.
std::size_t find_generator(const Space& W, const GeneratorSet& gens, std::size_t axis, int sign,
                           std::size_t dir) {
  GroupElement grade = GroupElement::unit(W.rank(), axis);
  if (sign < 0) grade = -grade;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].grade == grade && gens[i].direction == W.dual_direction(dir)) return i;
  }
  throw Error("classify: standard generator not found");
}

// The functional taking the value vals[j] on the dual direction d_j.  With
// embed(a) = a^T P and d_j = P^{-1} e_j, the coordinate row is vals^T P.
Functional functional_from_dual_values(const Space& W, const std::vector<Scalar>& vals) {
  const auto& P = W.pairing().rows();
  std::vector<Scalar> coords(W.rank());
  for (std::size_t k = 0; k < W.rank(); ++k) {
    Scalar acc(0);
    for (std::size_t j = 0; j < W.rank(); ++j) acc += vals[j] * P[j][k];
    coords[k] = acc;
  }
  return Functional(std::move(coords));
}

// A bracket identity [g_k, [g_i, g_j]] = c * g_m among standard generators,
// checkable against an action table through its four operator compositions.
struct DoubleBracketIdentity {
  std::size_t k, i, j, m;
  Scalar c;
};

struct ConsistencyPlan {
  std::vector<std::pair<std::size_t, std::size_t>> commuting;  // i < j with [g_i, g_j] = 0
  std::vector<DoubleBracketIdentity> identities;               // one per covered generator m
};

// The plan depends only on the rank: generator grades pair with dual
// directions identically under every pairing, so the bracket relations among
// standard generators are pairing-independent.
const ConsistencyPlan& consistency_plan(const Space& W, const GeneratorSet& gens) {
  static std::mutex mu;
  static std::map<std::size_t, ConsistencyPlan> cache;
  std::scoped_lock lock(mu);
  const auto it = cache.find(W.rank());
  if (it != cache.end()) return it->second;

  ConsistencyPlan plan;
  const std::size_t n = gens.size();
  std::vector<WittElement> gw(n);
  for (std::size_t i = 0; i < n; ++i) gw[i] = gens[i].to_witt();

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (bracket(W, gw[i], gw[j]).is_zero()) plan.commuting.emplace_back(i, j);
    }
  }

  for (std::size_t m = 0; m < n; ++m) {
    bool found = false;
    for (int pass = 0; pass < 2 && !found; ++pass) {
      for (std::size_t k = 0; k < n && !found; ++k) {
        for (std::size_t i = 0; i < n && !found; ++i) {
          for (std::size_t j = i + 1; j < n && !found; ++j) {
            if (pass == 0 && (k == m || i == m || j == m)) continue;
            const WittElement inner = bracket(W, gw[i], gw[j]);
            if (inner.is_zero()) continue;
            const WittElement outer = bracket(W, gw[k], inner);
            if (outer.term_count() != 1) continue;
            const auto& [grade, dir] = outer.terms().front();
            if (!(grade == gens[m].grade)) continue;
            const auto c = proportionality(dir, gens[m].direction);
            if (!c || c->is_zero()) continue;
            plan.identities.push_back({k, i, j, m, *c});
            found = true;
          }
        }
      }
    }
  }
  return cache.emplace(W.rank(), std::move(plan)).first->second;
}

// Rejects tables that violate the bracket identities every module action must
// satisfy: commuting generator pairs must act commutatively, and each
// double-bracket identity must hold through its operator expansion, wherever
// the window has room for every table lookup involved.
void consistency_check(const Space& W, const GeneratorSet& gens, const ActionTable& t) {
  const ConsistencyPlan& plan = consistency_plan(W, gens);
  const std::vector<GroupElement> window = box_grades(W.rank(), t.radius());
  const auto in = [&](const GroupElement& g) { return t.in_window(g); };

  for (const auto& [i, j] : plan.commuting) {
    const GroupElement &ai = gens[i].grade, &aj = gens[j].grade;
    for (const GroupElement& b : window) {
      if (!in(b + ai) || !in(b + aj) || !in(b + ai + aj)) continue;
      const Scalar lhs = t.get(j, b) * t.get(i, b + aj);
      const Scalar rhs = t.get(i, b) * t.get(j, b + ai);
      if (!(lhs == rhs)) {
        throw TableInconsistency("action table: commuting generators " + std::to_string(i) +
                                     " and " + std::to_string(j) +
                                     " act non-commutatively at grade " + grade_str(b),
                                 {i, j}, b);
      }
    }
  }

  for (const auto& id : plan.identities) {
    const GroupElement &ai = gens[id.i].grade, &aj = gens[id.j].grade, &ak = gens[id.k].grade;
    const GroupElement am = ai + aj + ak;
    for (const GroupElement& b : window) {
      if (!in(b + ai) || !in(b + aj) || !in(b + ak) || !in(b + ai + aj) || !in(b + aj + ak) ||
          !in(b + ai + ak) || !in(b + am)) {
        continue;
      }
      const Scalar term1 = t.get(id.j, b) * t.get(id.i, b + aj) * t.get(id.k, b + aj + ai);
      const Scalar term2 = t.get(id.i, b) * t.get(id.j, b + ai) * t.get(id.k, b + ai + aj);
      const Scalar term3 = t.get(id.k, b) * t.get(id.j, b + ak) * t.get(id.i, b + ak + aj);
      const Scalar term4 = t.get(id.k, b) * t.get(id.i, b + ak) * t.get(id.j, b + ak + ai);
      const Scalar lhs = term1 - term2 - term3 + term4;
      const Scalar rhs = id.c * t.get(id.m, b);
      if (!(lhs == rhs)) {
        throw TableInconsistency(
            "action table: double-bracket identity over generators (" + std::to_string(id.k) +
                ", " + std::to_string(id.i) + ", " + std::to_string(id.j) + ") fails at grade " +
                grade_str(b),
            {id.k, id.i, id.j}, b);
      }
    }
  }
}

// Every mismatch between the table and the family's own coefficients, over
// all entries with room.
std::vector<TableResidual> resweep(const Space& W, const GeneratorSet& gens, const ActionTable& t,
                                   const ModuleSpec& spec,
                                   const std::vector<GroupElement>& window) {
  std::vector<TableResidual> out;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (const GroupElement& b : window) {
      if (!t.has_room(i, b)) continue;
      const Scalar fitted = action_coefficient(W, spec, gens[i].grade, gens[i].direction, b);
      const Scalar actual = t.get(i, b);
      if (!(actual == fitted)) out.push_back({i, b, actual, fitted});
    }
  }
  return out;
}

}  // namespace

ActionTable::ActionTable(std::size_t rank, int radius) : rank_(rank), radius_(radius) {
  if (rank < 2) throw DomainError("ActionTable: rank must be at least 2");
  if (radius < 1) throw DomainError("ActionTable: radius must be at least 1");
  generator_count_ = 2 * rank * (rank - 1);
}

bool ActionTable::in_window(const GroupElement& b) const {
  return b.rank() == rank_ && b.inf_norm() <= radius_;
}

namespace {
// Grade of the index-th standard generator: the set lists, for each axis, the
// pairs (+eps_axis, d_j), (-eps_axis, d_j) over the rank-1 directions j.
GroupElement standard_generator_grade(std::size_t rank, std::size_t index) {
  const std::size_t per_axis = 2 * (rank - 1);
  const std::size_t axis = index / per_axis;
  GroupElement g = GroupElement::unit(rank, axis);
  if (index % 2 == 1) g = -g;
  return g;
}
}  // namespace

bool ActionTable::has_room(std::size_t gen, const GroupElement& b) const {
  if (gen >= generator_count_) throw DomainError("ActionTable: generator index out of range");
  return in_window(b) && in_window(b + standard_generator_grade(rank_, gen));
}

Scalar ActionTable::get(std::size_t gen, const GroupElement& b) const {
  if (gen >= generator_count_) throw DomainError("ActionTable: generator index out of range");
  if (b.rank() != rank_) throw DimensionError("ActionTable::get: rank mismatch");
  const auto it = entries_.find({gen, b});
  if (it == entries_.end()) return Scalar(0);
  return it->second;
}

void ActionTable::set(std::size_t gen, const GroupElement& b, const Scalar& c) {
  if (!has_room(gen, b)) {
    throw DomainError("ActionTable::set: entry (or its target grade) outside the window");
  }
  if (c.is_zero()) {
    entries_.erase({gen, b});
  } else {
    entries_.insert_or_assign({gen, b}, c);
  }
}

ActionTable record_action_table(const Space& W, const ModuleSpec& spec, int radius) {
  W.check_rank(spec.rank(), "record_action_table");
  const GeneratorSet gens = GeneratorSet::standard(W);
  ActionTable table(W.rank(), radius);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (const GroupElement& b : box_grades(W.rank(), radius)) {
      if (!table.has_room(i, b)) continue;
      const Scalar c = action_coefficient(W, spec, gens[i].grade, gens[i].direction, b);
      if (!c.is_zero()) table.set(i, b, c);
    }
  }
  return table;
}

const char* fit_kind_name(FitKind k) {
  switch (k) {
    case FitKind::TrivialFit:
      return "TrivialFit";
    case FitKind::MFit:
      return "MFit";
    case FitKind::AFit:
      return "AFit";
    case FitKind::BFit:
      return "BFit";
    case FitKind::NoFit:
      return "NoFit";
  }
  return "?";
}

FitResult classify_table(const Space& W, const ActionTable& table) {
  if (W.rank() < 3) throw DomainError("classify_table: rank at least 3 is required");
  if (table.rank() != W.rank()) throw DimensionError("classify_table: table rank mismatch");
  const GeneratorSet gens = GeneratorSet::standard(W);

  consistency_check(W, gens, table);

  FitResult result;
  result.verdict = FitKind::NoFit;
  result.spec = ModuleSpec::trivial(W.rank());
  if (table.entries().empty()) {
    result.verdict = FitKind::TrivialFit;
    return result;
  }

  const std::vector<GroupElement> window = box_grades(W.rank(), table.radius());

  // Dual-direction index of each generator.
  std::vector<std::size_t> dir_of(gens.size(), 0);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = 0; j < W.rank(); ++j) {
      if (gens[i].direction == W.dual_direction(j)) {
        dir_of[i] = j;
        break;
      }
    }
  }

  // Designated extraction generators: direction d_j read off axis 2 for j = 2
  // (and the alternate row convention for d_1, d_3: axis 2, 3, 2 in
  // one-based terms).
  std::vector<std::size_t> designated(W.rank());
  for (std::size_t j = 0; j < W.rank(); ++j) {
    const std::size_t axis = (j == 1) ? 2 : 1;
    designated[j] = find_generator(W, gens, axis, +1, j);
  }

  // Candidate extraction rows: the zero grade first (the paper's nu = 0
  // normalization), then the remaining window rows in lexicographic order.
  std::vector<GroupElement> rows;
  rows.push_back(GroupElement::zero(W.rank()));
  for (const GroupElement& b : window) {
    if (!b.is_zero()) rows.push_back(b);
  }

  std::vector<Functional> tried;
  bool have_best = false;
  std::vector<TableResidual> best;
  const auto consider = [&](std::vector<TableResidual> res) {
    if (!have_best || res.size() < best.size()) {
      best = std::move(res);
      have_best = true;
    }
  };

  // Attempts an A-fit (special source grade) or B-fit (special target grade)
  // around the generic functional mu; returns the verdict only when the full
  // re-sweep leaves no residual.
  const auto try_special = [&](const Functional& mu, const GroupElement& special,
                               bool a_family) -> std::optional<FitResult> {
    const auto zeta = W.pairing().unembed(mu);
    if (!zeta) return std::nullopt;
    if (!(-*zeta == special)) return std::nullopt;
    std::vector<std::optional<Scalar>> vals(W.rank());
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const GroupElement source = a_family ? special : special - gens[i].grade;
      if (!table.has_room(i, source)) continue;
      const Scalar v = table.get(i, source);
      auto& slot = vals[dir_of[i]];
      if (slot && !(*slot == v)) return std::nullopt;
      slot = v;
    }
    std::vector<Scalar> ev(W.rank());
    bool any = false;
    for (std::size_t j = 0; j < W.rank(); ++j) {
      ev[j] = vals[j] ? *vals[j] : Scalar(0);
      if (!ev[j].is_zero()) any = true;
    }
    if (!any) return std::nullopt;
    const Functional eta = functional_from_dual_values(W, ev);
    const ModuleSpec spec = a_family ? ModuleSpec::family_a(*zeta, eta)
                                     : ModuleSpec::family_b(*zeta, eta);
    auto res = resweep(W, gens, table, spec, window);
    if (res.empty()) {
      FitResult fit;
      fit.verdict = a_family ? FitKind::AFit : FitKind::BFit;
      fit.spec = spec;
      return fit;
    }
    consider(std::move(res));
    return std::nullopt;
  };

  for (const GroupElement& row : rows) {
    bool room = true;
    for (std::size_t j = 0; j < W.rank(); ++j) {
      if (!table.has_room(designated[j], row)) {
        room = false;
        break;
      }
    }
    if (!room) continue;

    std::vector<Scalar> vals(W.rank());
    for (std::size_t j = 0; j < W.rank(); ++j) {
      vals[j] = table.get(designated[j], row) - W.pair(row, W.dual_direction(j));
    }
    const Functional mu = functional_from_dual_values(W, vals);
    if (std::find(tried.begin(), tried.end(), mu) != tried.end()) continue;
    tried.push_back(mu);

    const ModuleSpec m_spec = ModuleSpec::family_m(mu);
    std::vector<TableResidual> dev = resweep(W, gens, table, m_spec, window);
    if (dev.empty()) {
      result.verdict = FitKind::MFit;
      result.spec = m_spec;
      result.residuals.clear();
      return result;
    }

    std::set<GroupElement> sources, targets;
    for (const TableResidual& r : dev) {
      sources.insert(r.grade);
      targets.insert(r.grade + gens[r.gen].grade);
    }
    if (sources.size() == 1) {
      if (auto fit = try_special(mu, *sources.begin(), /*a_family=*/true)) return *fit;
    }
    if (targets.size() == 1) {
      if (auto fit = try_special(mu, *targets.begin(), /*a_family=*/false)) return *fit;
    }
    consider(std::move(dev));
  }

  if (have_best) result.residuals = std::move(best);
  return result;
}

Lemma52Report lemma52_check(const Space& W, const ModuleSpec& spec, const GroupElement& sigma,
                            const DVector& d, const DVector& dprime, const GroupElement& nu,
                            int range) {
  W.check_rank(spec.rank(), "lemma52_check");
  W.check_rank(sigma.rank(), "lemma52_check");
  W.check_rank(d.rank(), "lemma52_check");
  W.check_rank(dprime.rank(), "lemma52_check");
  W.check_rank(nu.rank(), "lemma52_check");
  if (sigma.is_zero()) throw ContractError("lemma52_check: sigma must be nonzero");
  if (!W.pair(sigma, d).is_zero() || !W.pair(sigma, dprime).is_zero()) {
    throw ContractError("lemma52_check: both directions must lie in ker sigma");
  }
  if (range < 0) throw DomainError("lemma52_check: range must be nonnegative");

  const GroupElement msigma = -sigma;
  const auto at = [&](int i) { return nu + scaled_grade(sigma, i); };
  const auto raw_up = [&](int i) { return action_coefficient(W, spec, sigma, d, at(i)); };
  const auto raw_down = [&](int i) { return action_coefficient(W, spec, msigma, dprime, at(i)); };

  Lemma52Report rep;
  for (int i = -range; i <= range; ++i) rep.values.push_back(raw_up(i) * raw_down(i + 1));
  rep.c = rep.values.front();
  rep.constant = true;
  for (const Scalar& v : rep.values) {
    ++rep.checks;
    if (!(v == rep.c)) rep.constant = false;
  }
  if (!rep.constant || rep.c.is_zero()) return rep;

  const auto root = rep.c.sqrt_exact();
  if (!root) return rep;
  rep.rescale_applicable = true;
  rep.a = *root;

  // Rescaled vectors v_i = t_i w_i with base t_{-range} = 1, built through
  // the upward action; both step relations are then re-verified.
  const int lo = -range, hi = range + 1;
  std::vector<Scalar> t(static_cast<std::size_t>(hi - lo) + 1);
  t[0] = Scalar(1);
  for (int i = lo; i < hi; ++i) {
    const Scalar ru = raw_up(i);
    if (ru.is_zero()) return rep;  // cannot happen when the constant c is nonzero
    t[static_cast<std::size_t>(i - lo) + 1] = t[static_cast<std::size_t>(i - lo)] * ru / rep.a;
  }
  bool ok = true;
  for (int i = lo; i < hi; ++i) {
    ++rep.checks;
    if (!(t[static_cast<std::size_t>(i - lo)] * raw_up(i) ==
          rep.a * t[static_cast<std::size_t>(i - lo) + 1])) {
      ok = false;
    }
  }
  for (int i = lo + 1; i <= hi; ++i) {
    ++rep.checks;
    if (!(t[static_cast<std::size_t>(i - lo)] * raw_down(i) ==
          rep.a * t[static_cast<std::size_t>(i - lo) - 1])) {
      ok = false;
    }
  }
  rep.rescale_verified = ok;
  return rep;
}

Lemma53Basis lemma53_default_basis(const Space& W, const GroupElement& sigma,
                                   const GroupElement& rho) {
  W.check_rank(sigma.rank(), "lemma53_default_basis");
  W.check_rank(rho.rank(), "lemma53_default_basis");
  if (!z_independent(sigma, rho)) {
    throw ContractError("lemma53: sigma and rho must be Z-linearly independent");
  }
  const auto joint =
      kernel_of_rows(W.rank(), {W.grade_functional(sigma), W.grade_functional(rho)});
  if (joint.empty()) throw DomainError("lemma53: ker sigma and ker rho meet trivially");

  Lemma53Basis b;
  b.d1 = joint.front();
  for (const DVector& cand : kernel_basis(W.grade_functional(sigma))) {
    if (!in_span({b.d1}, cand)) {
      b.d2 = cand;
      break;
    }
  }
  for (const DVector& cand : kernel_basis(W.grade_functional(rho))) {
    if (!in_span({b.d1}, cand)) {
      b.d3 = cand;
      break;
    }
  }
  if (b.d2.rank() == 0 || b.d3.rank() == 0) {
    throw DomainError("lemma53: kernels too small to complete the basis");
  }
  return b;
}

Lemma53Report lemma53_check(const Space& W, const ModuleSpec& spec, const GroupElement& sigma,
                            const GroupElement& rho, const GroupElement& nu,
                            const Lemma53Basis& basis, int range) {
  W.check_rank(spec.rank(), "lemma53_check");
  W.check_rank(sigma.rank(), "lemma53_check");
  W.check_rank(rho.rank(), "lemma53_check");
  W.check_rank(nu.rank(), "lemma53_check");
  if (range < 1) throw DomainError("lemma53_check: range must be at least 1");
  if (!z_independent(sigma, rho)) {
    throw ContractError("lemma53_check: sigma and rho must be Z-linearly independent");
  }
  const DVector &d1 = basis.d1, &d2 = basis.d2, &d3 = basis.d3;
  W.check_rank(d1.rank(), "lemma53_check");
  W.check_rank(d2.rank(), "lemma53_check");
  W.check_rank(d3.rank(), "lemma53_check");
  if (d1.is_zero() || !W.pair(sigma, d1).is_zero() || !W.pair(rho, d1).is_zero()) {
    throw ContractError("lemma53_check: d1 must be a nonzero vector of ker sigma inter ker rho");
  }
  if (!W.pair(sigma, d2).is_zero() || in_span({d1}, d2)) {
    throw ContractError("lemma53_check: d2 must lie in ker sigma outside the span of d1");
  }
  if (!W.pair(rho, d3).is_zero() || in_span({d1}, d3)) {
    throw ContractError("lemma53_check: d3 must lie in ker rho outside the span of d1");
  }

  Lemma53Report rep;
  const GroupElement msigma = -sigma, mrho = -rho, diag = sigma + rho;
  const auto at = [&](int i, int k) {
    return nu + scaled_grade(sigma, i) + scaled_grade(rho, k);
  };
  const auto raw = [&](const GroupElement& shift, const DVector& dd, int i, int k) {
    return action_coefficient(W, spec, shift, dd, at(i, k));
  };

  const Scalar c_sigma = raw(sigma, d1, 0, 0) * raw(msigma, d1, 1, 0);
  const Scalar c_rho = raw(rho, d1, 0, 0) * raw(mrho, d1, 0, 1);
  if (c_sigma.is_zero() || c_rho.is_zero()) {
    rep.note = "nonvanishing hypothesis fails at nu";
    return rep;
  }
  const auto root_a = c_sigma.sqrt_exact();
  const auto root_b = c_rho.sqrt_exact();
  if (!root_a || !root_b) {
    rep.note = "a1 or b1 is irrational over the working field";
    return rep;
  }
  rep.a1 = *root_a;
  rep.b1 = *root_b;

  // Grid rescaling factors t_{i,k} over [-range-1, range+1]^2: the sigma-axis
  // first, then every rho-column, each step dividing out a1 or b1.
  const int G = range + 1;
  const int N = 2 * G + 1;
  std::vector<Scalar> t(static_cast<std::size_t>(N) * N);
  const auto idx = [&](int i, int k) {
    return static_cast<std::size_t>(i + G) * N + static_cast<std::size_t>(k + G);
  };
  t[idx(0, 0)] = Scalar(1);

  const auto extend = [&](int i, int k, int di, int dk, const GroupElement& shift,
                          const DVector& dd, const Scalar& denom) -> bool {
    const Scalar r = raw(shift, dd, i, k);
    if (r.is_zero()) return false;
    t[idx(i + di, k + dk)] = t[idx(i, k)] * r / denom;
    return true;
  };

  bool built = true;
  for (int i = 0; i < G && built; ++i) built = extend(i, 0, +1, 0, sigma, d1, rep.a1);
  for (int i = 0; i > -G && built; --i) built = extend(i, 0, -1, 0, msigma, d1, rep.a1);
  for (int i = -G; i <= G && built; ++i) {
    for (int k = 0; k < G && built; ++k) built = extend(i, k, 0, +1, rho, d1, rep.b1);
    for (int k = 0; k > -G && built; --k) built = extend(i, k, 0, -1, mrho, d1, rep.b1);
  }
  if (!built) {
    rep.note = "a grid action vanishes where the rescaling construction needs it";
    return rep;
  }
  rep.hypotheses_met = true;

  rep.d = raw(diag, d1, 0, 0) / t[idx(1, 1)];
  rep.a2 = raw(sigma, d2, 0, 0) / t[idx(1, 0)];
  rep.a3 = raw(rho, d3, 0, 0) / t[idx(0, 1)];

  const Scalar rho_d2 = W.pair(rho, d2);
  const Scalar sigma_d3 = W.pair(sigma, d3);

  bool axis_ok = true, diag_ok = true, f2_ok = true, f3_ok = true;
  for (int i = -range; i <= range; ++i) {
    for (int k = -range; k <= range; ++k) {
      const Scalar& tik = t[idx(i, k)];
      axis_ok = axis_ok && (tik * raw(sigma, d1, i, k) == rep.a1 * t[idx(i + 1, k)]);
      axis_ok = axis_ok && (tik * raw(msigma, d1, i, k) == rep.a1 * t[idx(i - 1, k)]);
      axis_ok = axis_ok && (tik * raw(rho, d1, i, k) == rep.b1 * t[idx(i, k + 1)]);
      axis_ok = axis_ok && (tik * raw(mrho, d1, i, k) == rep.b1 * t[idx(i, k - 1)]);
      diag_ok = diag_ok && (tik * raw(diag, d1, i, k) == rep.d * t[idx(i + 1, k + 1)]);
      const Scalar c2 = rep.a2 + Scalar(k) * rho_d2 * rep.d / rep.b1;
      f2_ok = f2_ok && (tik * raw(sigma, d2, i, k) == c2 * t[idx(i + 1, k)]);
      f2_ok = f2_ok && (tik * raw(msigma, d2, i, k) == c2 * t[idx(i - 1, k)]);
      const Scalar c3 = rep.a3 + Scalar(i) * sigma_d3 * rep.d / rep.a1;
      f3_ok = f3_ok && (tik * raw(rho, d3, i, k) == c3 * t[idx(i, k + 1)]);
      f3_ok = f3_ok && (tik * raw(mrho, d3, i, k) == c3 * t[idx(i, k - 1)]);
      rep.checks += 9;
    }
  }
  rep.axis_relations_ok = axis_ok;
  rep.diagonal_relation_ok = diag_ok;
  rep.sigma_formula_ok = f2_ok;
  rep.rho_formula_ok = f3_ok;
  rep.squares_ok =
      (rep.a1 * rep.a1 == rep.b1 * rep.b1) && (rep.b1 * rep.b1 == rep.d * rep.d);
  rep.checks += 2;
  return rep;
}

}  // namespace divfree
