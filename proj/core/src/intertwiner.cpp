#include <divfree/intertwiner.hpp>

#include <algorithm>
#include <deque>
#include <string>
#include <utility>

#include <divfree/errors.hpp>

namespace divfree {

const char* intertwiner_outcome_name(IntertwinerOutcome o) {
  return o == IntertwinerOutcome::Found ? "Found" : "NoneOnWindow";
}

namespace {

struct Edge {
  GroupElement to;
  Scalar ratio;  // c_to = ratio * c_from
  std::size_t generator;
};

struct BfsLink {
  GroupElement parent;
  Scalar ratio;  // c_child = ratio * c_parent
};

std::string grade_str(const GroupElement& g) {
  std::string s = "(";
  for (std::size_t i = 0; i < g.rank(); ++i) {
    if (i) s += ',';
    s += std::to_string(g[i]);
  }
  s += ')';
  return s;
}

// The closed loop through the tree paths of u and v plus the closing edge
// u -> v with the given ratio.  Both endpoints were reached from the same
// component seed, so walking parent links meets at a common ancestor.
IntertwinerCertificate make_cycle_certificate(const GroupElement& shift,
                                              const std::map<GroupElement, BfsLink>& links,
                                              const GroupElement& u, const GroupElement& v,
                                              const Scalar& closing_ratio,
                                              std::size_t closing_generator) {
  const auto path_to_seed = [&](GroupElement node) {
    std::vector<GroupElement> path{node};
    auto it = links.find(node);
    while (it != links.end()) {
      path.push_back(it->second.parent);
      it = links.find(it->second.parent);
    }
    return path;  // node, parent, ..., seed
  };
  std::vector<GroupElement> up = path_to_seed(u);
  std::vector<GroupElement> vp = path_to_seed(v);
  // Strip the shared tail above the lowest common ancestor.
  while (up.size() > 1 && vp.size() > 1 && up[up.size() - 2] == vp[vp.size() - 2]) {
    up.pop_back();
    vp.pop_back();
  }

  IntertwinerCertificate cert;
  cert.kind = IntertwinerCertificate::Kind::InconsistentCycle;
  cert.shift = shift;
  cert.source = u;
  cert.generator = closing_generator;
  Scalar product(1);
  // Ancestor -> ... -> u, descending the u-branch along parent ratios.
  for (std::size_t idx = up.size(); idx-- > 1;) {
    const GroupElement& child = up[idx - 1];
    const Scalar& r = links.at(child).ratio;
    cert.cycle.push_back({up[idx], child, r});
    product *= r;
  }
  // The closing edge u -> v.
  cert.cycle.push_back({u, v, closing_ratio});
  product *= closing_ratio;
  // v -> ... -> ancestor, ascending the v-branch along reciprocal ratios.
  for (std::size_t idx = 0; idx + 1 < vp.size(); ++idx) {
    const Scalar r = links.at(vp[idx]).ratio.reciprocal();
    cert.cycle.push_back({vp[idx], vp[idx + 1], r});
    product *= r;
  }
  cert.cycle_product = product;
  return cert;
}

}  // namespace

IntertwinerResult solve_intertwiner(const Space& W, const ModuleSpec& domain,
                                    const ModuleSpec& codomain, int window_radius,
                                    int shift_radius) {
  W.check_rank(domain.rank(), "solve_intertwiner");
  W.check_rank(codomain.rank(), "solve_intertwiner");
  if (window_radius < 1) throw DomainError("solve_intertwiner: window radius must be >= 1");
  if (shift_radius < 0) shift_radius = window_radius;

  const GeneratorSet gens = GeneratorSet::standard(W);
  const std::vector<GroupElement> window = box_grades(W.rank(), window_radius);

  IntertwinerResult result;
  result.window_radius = window_radius;

  for (const GroupElement& shift : box_grades(W.rank(), shift_radius)) {
    bool abandoned = false;
    std::map<GroupElement, std::vector<Edge>> adj;
    std::vector<GroupElement> forward_sources;  // grades with a nonzero outgoing coefficient

    for (const GroupElement& b : window) {
      bool outgoing = false;
      for (std::size_t i = 0; i < gens.size() && !abandoned; ++i) {
        const GroupElement target = gens[i].grade + b;
        if (target.inf_norm() > window_radius) continue;
        const Scalar c1 = action_coefficient(W, domain, gens[i].grade, gens[i].direction, b);
        const Scalar c2 =
            action_coefficient(W, codomain, gens[i].grade, gens[i].direction, b + shift);
        if (c1.is_zero() && c2.is_zero()) continue;
        if (c1.is_zero() || c2.is_zero()) {
          IntertwinerCertificate cert;
          cert.kind = IntertwinerCertificate::Kind::ZeroMismatch;
          cert.shift = shift;
          cert.source = b;
          cert.generator = i;
          cert.domain_coefficient = c1;
          cert.codomain_coefficient = c2;
          result.certificates.push_back(std::move(cert));
          abandoned = true;
          break;
        }
        outgoing = true;
        const Scalar ratio = c2 / c1;
        adj[b].push_back({target, ratio, i});
        adj[target].push_back({b, ratio.reciprocal(), i});
      }
      if (abandoned) break;
      if (outgoing) forward_sources.push_back(b);
    }
    if (abandoned) continue;

    // Breadth-first propagation; the first seed is the lexicographically
    // smallest grade with a nonzero outgoing coefficient, later components
    // are seeded at their lexicographically smallest member.
    std::map<GroupElement, Scalar> assigned;
    std::map<GroupElement, BfsLink> links;
    std::size_t components = 0;

    const auto propagate = [&](const GroupElement& seed) -> bool {
      ++components;
      assigned.emplace(seed, Scalar(1));
      std::deque<GroupElement> queue{seed};
      while (!queue.empty()) {
        const GroupElement u = queue.front();
        queue.pop_front();
        const auto it = adj.find(u);
        if (it == adj.end()) continue;
        const Scalar cu = assigned.at(u);
        for (const Edge& e : it->second) {
          const Scalar cv = cu * e.ratio;
          const auto found = assigned.find(e.to);
          if (found == assigned.end()) {
            assigned.emplace(e.to, cv);
            links.insert({e.to, BfsLink{u, e.ratio}});
            queue.push_back(e.to);
          } else if (!(found->second == cv)) {
            result.certificates.push_back(
                make_cycle_certificate(shift, links, u, e.to, e.ratio, e.generator));
            return false;
          }
        }
      }
      return true;
    };

    bool consistent = true;
    if (!forward_sources.empty()) consistent = propagate(forward_sources.front());
    for (const GroupElement& b : window) {
      if (!consistent) break;
      if (assigned.count(b) == 0) consistent = propagate(b);
    }
    if (!consistent) continue;

    result.outcome = IntertwinerOutcome::Found;
    result.shift = shift;
    result.scalars = std::move(assigned);
    result.free_scalars = components;
    result.certificates.clear();
    return result;
  }

  result.outcome = IntertwinerOutcome::NoneOnWindow;
  return result;
}

AxiomReport verify_intertwiner(const Space& W, const ModuleSpec& domain,
                               const ModuleSpec& codomain, const GroupElement& shift,
                               const std::map<GroupElement, Scalar>& scalars, int window_radius) {
  W.check_rank(domain.rank(), "verify_intertwiner");
  W.check_rank(codomain.rank(), "verify_intertwiner");
  W.check_rank(shift.rank(), "verify_intertwiner");
  if (window_radius < 1) throw DomainError("verify_intertwiner: window radius must be >= 1");
  for (const GroupElement& b : box_grades(W.rank(), window_radius)) {
    if (scalars.count(b) == 0) {
      throw ContractError("verify_intertwiner: scalars must cover the whole window");
    }
  }

  const auto phi = [&](const ModuleVector& m) {
    ModuleVector out(W.rank());
    for (const auto& [g, c] : m.terms()) out.add_term(g + shift, c * scalars.at(g));
    return out;
  };

  AxiomReport report;
  const GeneratorSet gens = GeneratorSet::standard(W);
  for (const GroupElement& b : box_grades(W.rank(), window_radius - 1)) {
    const ModuleVector v = ModuleVector::basis(b);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const WittElement g = gens[i].to_witt();
      const ModuleVector lhs = phi(act(W, domain, g, v, SCheck::SkipValidated));
      const ModuleVector rhs = act(W, codomain, g, phi(v), SCheck::SkipValidated);
      ++report.checks;
      if (!(lhs == rhs)) {
        ++report.failures;
        if (report.first_counterexample.empty()) {
          report.first_counterexample =
              "generator " + std::to_string(i) + " at v_" + grade_str(b);
        }
      }
    }
  }
  return report;
}

}  // namespace divfree
