#include <divfree/spaces.hpp>

#include <algorithm>

#include <divfree/errors.hpp>

namespace divfree {

GroupElement GroupElement::unit(std::size_t rank, std::size_t axis) {
  if (axis >= rank) throw DomainError("GroupElement: axis out of range");
  std::vector<std::int64_t> c(rank, 0);
  c[axis] = 1;
  return GroupElement(std::move(c));
}

bool GroupElement::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](std::int64_t x) { return x == 0; });
}

std::int64_t GroupElement::inf_norm() const {
  std::int64_t m = 0;
  for (std::int64_t x : coords_) m = std::max(m, x < 0 ? -x : x);
  return m;
}

namespace {
void require_same_rank(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw DimensionError(std::string(what) + ": rank mismatch");
}
}  // namespace

GroupElement GroupElement::operator+(const GroupElement& o) const {
  require_same_rank(rank(), o.rank(), "GroupElement+");
  std::vector<std::int64_t> c(coords_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.coords_[i];
  return GroupElement(std::move(c));
}

GroupElement GroupElement::operator-(const GroupElement& o) const {
  require_same_rank(rank(), o.rank(), "GroupElement-");
  std::vector<std::int64_t> c(coords_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.coords_[i];
  return GroupElement(std::move(c));
}

GroupElement GroupElement::operator-() const {
  std::vector<std::int64_t> c(coords_);
  for (auto& x : c) x = -x;
  return GroupElement(std::move(c));
}

GroupElement& GroupElement::operator+=(const GroupElement& o) {
  require_same_rank(rank(), o.rank(), "GroupElement+=");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

DVector DVector::unit(std::size_t rank, std::size_t axis) {
  if (axis >= rank) throw DomainError("DVector: axis out of range");
  std::vector<Scalar> c(rank);
  c[axis] = Scalar(1);
  return DVector(std::move(c));
}

bool DVector::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Scalar& x) { return x.is_zero(); });
}

DVector DVector::operator+(const DVector& o) const {
  require_same_rank(rank(), o.rank(), "DVector+");
  DVector r(*this);
  r += o;
  return r;
}

DVector DVector::operator-(const DVector& o) const {
  require_same_rank(rank(), o.rank(), "DVector-");
  DVector r(*this);
  for (std::size_t i = 0; i < coords_.size(); ++i) r.coords_[i] -= o.coords_[i];
  return r;
}

DVector DVector::operator-() const {
  DVector r(*this);
  for (auto& x : r.coords_) x = -x;
  return r;
}

DVector& DVector::operator+=(const DVector& o) {
  require_same_rank(rank(), o.rank(), "DVector+=");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

DVector DVector::scaled(const Scalar& c) const {
  DVector r(*this);
  for (auto& x : r.coords_) x *= c;
  return r;
}

void DVector::add_scaled(const DVector& o, const Scalar& c) {
  require_same_rank(rank(), o.rank(), "DVector::add_scaled");
  if (c.is_zero()) return;
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i] * c;
}

bool Functional::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Scalar& x) { return x.is_zero(); });
}

Scalar Functional::eval(const DVector& d) const {
  require_same_rank(rank(), d.rank(), "Functional::eval");
  Scalar acc;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (!coords_[i].is_zero() && !d[i].is_zero()) acc += coords_[i] * d[i];
  }
  return acc;
}

Functional Functional::operator+(const Functional& o) const {
  require_same_rank(rank(), o.rank(), "Functional+");
  Functional r(*this);
  for (std::size_t i = 0; i < coords_.size(); ++i) r.coords_[i] += o.coords_[i];
  return r;
}

Functional Functional::operator-(const Functional& o) const {
  require_same_rank(rank(), o.rank(), "Functional-");
  Functional r(*this);
  for (std::size_t i = 0; i < coords_.size(); ++i) r.coords_[i] -= o.coords_[i];
  return r;
}

Functional Functional::operator-() const {
  Functional r(*this);
  for (auto& x : r.coords_) x = -x;
  return r;
}

Functional Functional::scaled(const Scalar& c) const {
  Functional r(*this);
  for (auto& x : r.coords_) x *= c;
  return r;
}

Pairing Pairing::identity(std::size_t rank) {
  std::vector<std::vector<Scalar>> rows(rank, std::vector<Scalar>(rank));
  for (std::size_t i = 0; i < rank; ++i) rows[i][i] = Scalar(1);
  return Pairing(std::move(rows));
}

Pairing::Pairing(std::vector<std::vector<Scalar>> rows) : rows_(std::move(rows)) {
  const std::size_t n = rows_.size();
  if (n == 0) throw DomainError("Pairing: empty matrix");
  for (const auto& row : rows_) {
    if (row.size() != n) throw DimensionError("Pairing: matrix is not square");
  }
  // Invert by eliminating on [P | I]; a missing pivot means P is singular.
  std::vector<std::vector<Scalar>> work(n, std::vector<Scalar>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) work[i][j] = rows_[i][j];
    work[i][n + i] = Scalar(1);
  }
  const auto pivots = rref_in_place(work);
  if (pivots.size() != n || pivots.back() != n - 1) {
    // Full row rank with all pivots inside the left block iff invertible.
    bool ok = pivots.size() == n;
    for (std::size_t i = 0; ok && i < n; ++i) ok = pivots[i] == i;
    if (!ok) throw DomainError("Pairing: matrix is singular");
  }
  inv_.assign(n, std::vector<Scalar>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv_[i][j] = work[i][n + j];
  }
  identity_ = true;
  for (std::size_t i = 0; identity_ && i < n; ++i) {
    for (std::size_t j = 0; identity_ && j < n; ++j) {
      identity_ = rows_[i][j] == (i == j ? Scalar(1) : Scalar(0));
    }
  }
}

Functional Pairing::embed(const GroupElement& a) const {
  require_same_rank(rank(), a.rank(), "Pairing::embed");
  std::vector<Scalar> f(rank());
  if (identity_) {
    for (std::size_t j = 0; j < f.size(); ++j) f[j] = Scalar(a[j]);
    return Functional(std::move(f));
  }
  for (std::size_t j = 0; j < f.size(); ++j) {
    Scalar acc;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (a[i] != 0) acc += Scalar(a[i]) * rows_[i][j];
    }
    f[j] = acc;
  }
  return Functional(std::move(f));
}

std::optional<GroupElement> Pairing::unembed(const Functional& f) const {
  require_same_rank(rank(), f.rank(), "Pairing::unembed");
  // f = P^T a, so a_i = sum_j (P^-1)_{ji} f_j.
  std::vector<std::int64_t> a(rank());
  for (std::size_t i = 0; i < rank(); ++i) {
    Scalar acc;
    for (std::size_t j = 0; j < rank(); ++j) acc += inv_[j][i] * f[j];
    if (!acc.is_integer()) return std::nullopt;
    const std::string digits = acc.to_string();
    try {
      a[i] = std::stoll(digits);
    } catch (const std::exception&) {
      return std::nullopt;  // integral but far outside any usable window
    }
  }
  return GroupElement(std::move(a));
}

DVector Pairing::dual_direction(std::size_t j) const {
  if (j >= rank()) throw DomainError("Pairing: axis out of range");
  std::vector<Scalar> d(rank());
  for (std::size_t i = 0; i < rank(); ++i) d[i] = inv_[i][j];
  return DVector(std::move(d));
}

Space::Space(Pairing pairing) : pairing_(std::move(pairing)) {
  if (pairing_.rank() < 2) throw DomainError("Space: rank must be at least 2");
  duals_.reserve(pairing_.rank());
  for (std::size_t j = 0; j < pairing_.rank(); ++j) duals_.push_back(pairing_.dual_direction(j));
}

Scalar Space::pair(const GroupElement& a, const DVector& d) const {
  require_same_rank(rank(), a.rank(), "Space::pair");
  require_same_rank(rank(), d.rank(), "Space::pair");
  if (pairing_.is_identity()) {
    Scalar acc;
    for (std::size_t i = 0; i < a.rank(); ++i) {
      if (a[i] != 0 && !d[i].is_zero()) acc += d[i] * Scalar(a[i]);
    }
    return acc;
  }
  return pairing_.embed(a).eval(d);
}

void Space::check_rank(std::size_t r, const char* what) const {
  require_same_rank(rank(), r, what);
}

std::vector<std::size_t> rref_in_place(std::vector<std::vector<Scalar>>& rows) {
  std::vector<std::size_t> pivots;
  if (rows.empty()) return pivots;
  const std::size_t cols = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][c].is_zero()) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    const Scalar inv = rows[r][c].reciprocal();
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      const Scalar factor = rows[i][c];
      for (std::size_t j = 0; j < cols; ++j) rows[i][j] -= factor * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<DVector> kernel_of_rows(std::size_t rank, const std::vector<Functional>& rows) {
  std::vector<std::vector<Scalar>> mat;
  mat.reserve(rows.size());
  for (const auto& f : rows) {
    require_same_rank(rank, f.rank(), "kernel_of_rows");
    mat.push_back(f.coords());
  }
  const auto pivots = rref_in_place(mat);
  std::vector<bool> is_pivot(rank, false);
  for (auto c : pivots) is_pivot[c] = true;

  std::vector<DVector> basis;
  for (std::size_t j = 0; j < rank; ++j) {
    if (is_pivot[j]) continue;
    std::vector<Scalar> v(rank);
    v[j] = Scalar(1);
    for (std::size_t p = 0; p < pivots.size(); ++p) v[pivots[p]] = -mat[p][j];
    // Normalize so the first nonzero coordinate is 1.
    std::size_t first = 0;
    while (first < rank && v[first].is_zero()) ++first;
    if (first < rank && !v[first].is_one()) {
      const Scalar inv = v[first].reciprocal();
      for (auto& x : v) x *= inv;
    }
    basis.emplace_back(std::move(v));
  }
  return basis;
}

std::vector<DVector> kernel_basis(const Functional& f) {
  return kernel_of_rows(f.rank(), {f});
}

bool in_span(const std::vector<DVector>& basis, const DVector& candidate) {
  if (basis.empty()) return candidate.is_zero();
  std::vector<std::vector<Scalar>> mat;
  mat.reserve(basis.size());
  for (const auto& b : basis) mat.push_back(b.coords());
  const auto pivots = rref_in_place(mat);
  std::vector<Scalar> v = candidate.coords();
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    const std::size_t c = pivots[r];
    if (v[c].is_zero()) continue;
    const Scalar factor = v[c];
    for (std::size_t j = 0; j < v.size(); ++j) v[j] -= factor * mat[r][j];
  }
  return std::all_of(v.begin(), v.end(), [](const Scalar& x) { return x.is_zero(); });
}

std::vector<GroupElement> box_grades(std::size_t rank, std::int64_t radius) {
  if (radius < 0) throw DomainError("box_grades: negative radius");
  std::vector<GroupElement> out;
  std::vector<std::int64_t> cur(rank, -radius);
  while (true) {
    out.emplace_back(cur);
    std::size_t i = rank;
    while (i > 0) {
      --i;
      if (cur[i] < radius) {
        ++cur[i];
        for (std::size_t j = i + 1; j < rank; ++j) cur[j] = -radius;
        break;
      }
      if (i == 0) return out;
    }
  }
}

}  // namespace divfree
