#include <divfree/salgebra.hpp>

#include <algorithm>
#include <optional>

#include <divfree/errors.hpp>

namespace divfree {

namespace {

// Solves sum_m c_m basis[m] = v; nullopt when v is outside the span.
std::optional<std::vector<Scalar>> coords_in_basis(const std::vector<DVector>& basis,
                                                   const DVector& v) {
  const std::size_t n = v.rank();
  std::vector<std::vector<Scalar>> m(n, std::vector<Scalar>(basis.size() + 1));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < basis.size(); ++c) m[r][c] = basis[c][r];
    m[r][basis.size()] = v[r];
  }
  const auto pivots = rref_in_place(m);
  if (!pivots.empty() && pivots.back() == basis.size()) return std::nullopt;
  std::vector<Scalar> out(basis.size());
  for (std::size_t r = 0; r < pivots.size(); ++r) out[pivots[r]] = m[r].back();
  return out;
}

// Keeps rows in reduced echelon form; returns true when v was independent.
bool add_to_row_space(std::vector<DVector>& rows, const DVector& v) {
  std::vector<std::vector<Scalar>> mat;
  mat.reserve(rows.size() + 1);
  for (const auto& r : rows) mat.push_back(r.coords());
  mat.push_back(v.coords());
  const auto pivots = rref_in_place(mat);
  if (pivots.size() == rows.size()) return false;
  rows.clear();
  for (std::size_t r = 0; r < pivots.size(); ++r) rows.emplace_back(std::move(mat[r]));
  return true;
}

}  // namespace

bool is_in_s(const Space& W, const WittElement& u) {
  if (u.direction_at(GroupElement::zero(u.rank() ? u.rank() : W.rank())) != nullptr) return false;
  return divergence(W, u).is_zero();
}

std::vector<SBasisElement> s_grade_basis(const Space& W, const GroupElement& a) {
  W.check_rank(a.rank(), "s_grade_basis");
  if (a.is_zero()) {
    throw DomainError("s_grade_basis: the simple subalgebra has no zero-grade component");
  }
  std::vector<SBasisElement> out;
  for (auto& d : kernel_basis(W.grade_functional(a))) {
    out.push_back({a, std::move(d)});
  }
  return out;
}

GeneratorSet GeneratorSet::standard(const Space& W) {
  if (W.rank() < 3) {
    throw DomainError("GeneratorSet: the standard family needs rank at least 3");
  }
  GeneratorSet gs;
  gs.extrapolated_ = W.rank() > 3;
  for (std::size_t i = 0; i < W.rank(); ++i) {
    for (std::size_t j = 0; j < W.rank(); ++j) {
      if (j == i) continue;
      const GroupElement e = GroupElement::unit(W.rank(), i);
      gs.elements_.push_back({e, W.dual_direction(j)});
      gs.elements_.push_back({-e, W.dual_direction(j)});
    }
  }
  return gs;
}

BracketSpan::BracketSpan(const Space& W, const GeneratorSet& gens, int height,
                         std::int64_t grade_cap)
    : rank_(W.rank()) {
  if (height < 1) throw DomainError("BracketSpan: height must be at least 1");
  std::vector<std::pair<GroupElement, DVector>> all;
  std::vector<std::pair<GroupElement, DVector>> fresh;
  for (const auto& g : gens.elements()) {
    if (g.grade.inf_norm() > grade_cap) continue;
    if (add_to_row_space(span_[g.grade], g.direction)) fresh.emplace_back(g.grade, g.direction);
  }
  all = fresh;
  for (int level = 2; level <= height && !fresh.empty(); ++level) {
    std::vector<std::pair<GroupElement, DVector>> next;
    for (const auto& [a, d1] : fresh) {
      for (const auto& [b, d2] : all) {
        const GroupElement target = a + b;
        if (target.inf_norm() > grade_cap) continue;
        auto& rows = span_[target];
        if (rows.size() + 1 == rank_ && !target.is_zero()) continue;  // component already full
        const Scalar b_on_d1 = W.pair(b, d1);
        const Scalar a_on_d2 = W.pair(a, d2);
        if (b_on_d1.is_zero() && a_on_d2.is_zero()) continue;
        DVector dir = d2.scaled(b_on_d1);
        dir.add_scaled(d1, -a_on_d2);
        if (dir.is_zero()) continue;
        if (add_to_row_space(rows, dir)) next.emplace_back(target, std::move(dir));
      }
    }
    all.insert(all.end(), next.begin(), next.end());
    fresh = std::move(next);
  }
  std::erase_if(span_, [](const auto& kv) { return kv.second.empty(); });
}

std::vector<WittElement> BracketSpan::spanning(const GroupElement& grade) const {
  std::vector<WittElement> out;
  const auto it = span_.find(grade);
  if (it == span_.end()) return out;
  out.reserve(it->second.size());
  for (const auto& d : it->second) out.push_back(WittElement::term(grade, d));
  return out;
}

std::size_t BracketSpan::dimension(const GroupElement& grade) const {
  const auto it = span_.find(grade);
  return it == span_.end() ? 0 : it->second.size();
}

std::vector<WittElement> nested_bracket_span(const Space& W, const GeneratorSet& gens,
                                             const GroupElement& a, int depth,
                                             std::int64_t grade_cap) {
  W.check_rank(a.rank(), "nested_bracket_span");
  if (a.is_zero()) throw DomainError("nested_bracket_span: grade 0 not in S");
  if (depth < 1) throw DomainError("nested_bracket_span: depth must be at least 1");
  if (grade_cap < 0) grade_cap = a.inf_norm() + 2;
  const BracketSpan engine(W, gens, depth + 1, grade_cap);
  return engine.spanning(a);
}

SpanCheckReport span_check(const Space& W, const GeneratorSet& gens, int radius, int depth) {
  if (radius < 1) throw DomainError("span_check: radius must be at least 1");
  SpanCheckReport report;
  report.radius = radius;
  report.depth = depth;
  const BracketSpan engine(W, gens, depth + 1, radius + 2);
  for (const auto& g : box_grades(W.rank(), radius)) {
    if (g.is_zero()) continue;
    ++report.grades_checked;
    const std::size_t achieved = engine.dimension(g);
    const std::size_t expected = W.rank() - 1;
    if (achieved < expected) report.shortfalls.push_back({g, achieved, expected});
  }
  return report;
}

StructureConstants structure_constants(const Space& W, int radius) {
  if (radius < 1) throw DomainError("structure_constants: radius must be at least 1");
  StructureConstants sc;
  sc.radius = radius;
  std::map<GroupElement, std::pair<std::size_t, std::size_t>> index;  // grade -> [first, count)
  for (const auto& g : box_grades(W.rank(), radius)) {
    if (g.is_zero()) continue;
    auto basis = s_grade_basis(W, g);
    index[g] = {sc.basis.size(), basis.size()};
    for (auto& b : basis) sc.basis.push_back(std::move(b));
  }
  for (std::size_t i = 0; i < sc.basis.size(); ++i) {
    for (std::size_t j = 0; j < sc.basis.size(); ++j) {
      const GroupElement target = sc.basis[i].grade + sc.basis[j].grade;
      const auto it = index.find(target);
      if (it == index.end()) continue;  // zero grade or outside the window
      const WittElement br = bracket(W, sc.basis[i].to_witt(), sc.basis[j].to_witt());
      if (br.is_zero()) continue;
      const DVector* dir = br.direction_at(target);
      if (dir == nullptr) continue;
      std::vector<DVector> local;
      local.reserve(it->second.second);
      for (std::size_t m = 0; m < it->second.second; ++m) {
        local.push_back(sc.basis[it->second.first + m].direction);
      }
      const auto coords = coords_in_basis(local, *dir);
      if (!coords) throw Error("structure_constants: bracket left the subalgebra");
      for (std::size_t m = 0; m < coords->size(); ++m) {
        if (!(*coords)[m].is_zero()) {
          sc.entries.push_back({i, j, it->second.first + m, (*coords)[m]});
        }
      }
    }
  }
  return sc;
}

}  // namespace divfree
