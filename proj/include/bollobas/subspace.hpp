#pragma once

// Exact subspace lattice over the rationals or GF(p). A Subspace is stored
// by its reduced row echelon basis, so structural equality is subspace
// equality.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bollobas/errors.hpp"
#include "bollobas/exact_arith.hpp"

namespace bollobas {

template <ExactScalar S>
using Vector = std::vector<S>;

template <ExactScalar S>
using Matrix = std::vector<Vector<S>>;

template <ExactScalar S>
Vector<S> zero_vector(std::size_t n, const FieldTag& f) {
  return Vector<S>(n, ScalarTraits<S>::from_int(f, 0));
}

/// e_p with p 1-based.
template <ExactScalar S>
Vector<S> unit_vector(std::size_t n, const FieldTag& f, std::size_t p) {
  if (p == 0 || p > n) throw ShapeError("unit vector index out of range");
  auto v = zero_vector<S>(n, f);
  v[p - 1] = ScalarTraits<S>::from_int(f, 1);
  return v;
}

template <ExactScalar S>
bool is_zero_vector(const Vector<S>& v) {
  return std::all_of(v.begin(), v.end(), [](const S& s) { return ScalarTraits<S>::is_zero(s); });
}

/// In-place Gauss-Jordan elimination. On return `m` holds the nonzero rows
/// of the reduced row echelon form (leading entries 1, pivot columns
/// strictly increasing); the pivot columns are returned.
template <ExactScalar S>
std::vector<std::size_t> row_reduce(Matrix<S>& m, std::size_t cols) {
  using T = ScalarTraits<S>;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t sel = r;
    while (sel < m.size() && T::is_zero(m[sel][c])) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[r], m[sel]);
    S inv = T::inverse(m[r][c]);
    for (std::size_t j = c; j < cols; ++j) m[r][j] = m[r][j] * inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || T::is_zero(m[i][c])) continue;
      S factor = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] = m[i][j] - factor * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  return pivots;
}

/// Basis of { x : M x = 0 } for an rows x cols matrix M.
template <ExactScalar S>
Matrix<S> null_space(Matrix<S> m, std::size_t cols, const FieldTag& f) {
  using T = ScalarTraits<S>;
  auto pivots = row_reduce(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  Matrix<S> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    auto x = zero_vector<S>(cols, f);
    x[free] = T::from_int(f, 1);
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = T::from_int(f, 0) - m[r][free];
    basis.push_back(std::move(x));
  }
  return basis;
}

template <ExactScalar S>
class Subspace {
 public:
  /// Row space of `rows`, canonicalized; dependent and zero rows vanish.
  static Subspace span(std::size_t ambient_dim, const FieldTag& field, Matrix<S> rows) {
    if (!ScalarTraits<S>::accepts(field))
      throw ShapeError("scalar type does not match field " + to_string(field));
    for (const auto& row : rows)
      if (row.size() != ambient_dim)
        throw ShapeError("row of length " + std::to_string(row.size()) + " in ambient dimension " +
                         std::to_string(ambient_dim));
    Subspace u;
    u.n_ = ambient_dim;
    u.field_ = field;
    u.pivots_ = row_reduce(rows, ambient_dim);
    u.rows_ = std::move(rows);
    return u;
  }

  static Subspace zero(std::size_t ambient_dim, const FieldTag& field) {
    return span(ambient_dim, field, {});
  }

  static Subspace full(std::size_t ambient_dim, const FieldTag& field) {
    Matrix<S> rows;
    for (std::size_t p = 1; p <= ambient_dim; ++p) rows.push_back(unit_vector<S>(ambient_dim, field, p));
    return span(ambient_dim, field, std::move(rows));
  }

  /// span{e_p : p in positions}, positions 1-based.
  static Subspace coordinate(std::size_t ambient_dim, const FieldTag& field,
                             std::span<const std::size_t> positions) {
    Matrix<S> rows;
    for (auto p : positions) rows.push_back(unit_vector<S>(ambient_dim, field, p));
    return span(ambient_dim, field, std::move(rows));
  }

  std::size_t ambient_dim() const noexcept { return n_; }
  const FieldTag& field() const noexcept { return field_; }
  std::size_t dim() const noexcept { return rows_.size(); }
  bool is_zero() const noexcept { return rows_.empty(); }
  const Matrix<S>& rows() const noexcept { return rows_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.n_ == b.n_ && a.field_ == b.field_ && a.rows_ == b.rows_;
  }

 private:
  Subspace() = default;

  std::size_t n_ = 0;
  FieldTag field_;
  Matrix<S> rows_;
  std::vector<std::size_t> pivots_;
};

template <ExactScalar S>
Subspace<S> canonicalize(std::size_t ambient_dim, const FieldTag& field, Matrix<S> rows) {
  return Subspace<S>::span(ambient_dim, field, std::move(rows));
}

namespace detail {

template <ExactScalar S>
void require_compatible(const Subspace<S>& u, const Subspace<S>& w) {
  if (u.ambient_dim() != w.ambient_dim() || !(u.field() == w.field()))
    throw ShapeError("subspaces live in different ambient spaces (" + std::to_string(u.ambient_dim()) + " over " +
                     to_string(u.field()) + " vs " + std::to_string(w.ambient_dim()) + " over " +
                     to_string(w.field()) + ")");
}

}  // namespace detail

/// v in U, by elimination against the RREF basis.
template <ExactScalar S>
bool contains(const Subspace<S>& u, Vector<S> v) {
  if (v.size() != u.ambient_dim()) throw ShapeError("vector length does not match ambient dimension");
  const auto& rows = u.rows();
  const auto& piv = u.pivots();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (ScalarTraits<S>::is_zero(v[piv[r]])) continue;
    S factor = v[piv[r]];
    for (std::size_t j = piv[r]; j < v.size(); ++j) v[j] = v[j] - factor * rows[r][j];
  }
  return is_zero_vector(v);
}

/// U subset of W
template <ExactScalar S>
bool is_subspace_of(const Subspace<S>& u, const Subspace<S>& w) {
  detail::require_compatible(u, w);
  if (u.dim() > w.dim()) return false;
  return std::all_of(u.rows().begin(), u.rows().end(), [&](const Vector<S>& r) { return contains(w, r); });
}

template <ExactScalar S>
Subspace<S> sum(const Subspace<S>& u, const Subspace<S>& w) {
  detail::require_compatible(u, w);
  Matrix<S> rows = u.rows();
  rows.insert(rows.end(), w.rows().begin(), w.rows().end());
  return Subspace<S>::span(u.ambient_dim(), u.field(), std::move(rows));
}

/// U + <v>
template <ExactScalar S>
Subspace<S> extend(const Subspace<S>& u, const Vector<S>& v) {
  Matrix<S> rows = u.rows();
  rows.push_back(v);
  return Subspace<S>::span(u.ambient_dim(), u.field(), std::move(rows));
}

/// U ∩ W from the kernel of the stacked basis system
/// sum x_i u_i + sum y_j w_j = 0; the vectors sum x_i u_i span U ∩ W.
template <ExactScalar S>
Subspace<S> intersection(const Subspace<S>& u, const Subspace<S>& w) {
  detail::require_compatible(u, w);
  const std::size_t n = u.ambient_dim();
  const FieldTag& f = u.field();
  if (u.is_zero() || w.is_zero()) return Subspace<S>::zero(n, f);
  const std::size_t a = u.dim(), b = w.dim();
  Matrix<S> system(n, Vector<S>(a + b, ScalarTraits<S>::from_int(f, 0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < a; ++j) system[i][j] = u.rows()[j][i];
    for (std::size_t j = 0; j < b; ++j) system[i][a + j] = w.rows()[j][i];
  }
  Matrix<S> kernel = null_space(std::move(system), a + b, f);
  Matrix<S> rows;
  rows.reserve(kernel.size());
  for (const auto& x : kernel) {
    auto v = zero_vector<S>(n, f);
    for (std::size_t j = 0; j < a; ++j) {
      if (ScalarTraits<S>::is_zero(x[j])) continue;
      for (std::size_t c = 0; c < n; ++c) v[c] = v[c] + x[j] * u.rows()[j][c];
    }
    rows.push_back(std::move(v));
  }
  return Subspace<S>::span(n, f, std::move(rows));
}

/// U ∩ V_k, under its decomposition-context name.
template <ExactScalar S>
Subspace<S> component(const Subspace<S>& u, const Subspace<S>& block) {
  return intersection(u, block);
}

/// dim(sum parts) == sum dim(parts). An empty list is trivially direct.
template <ExactScalar S>
bool is_direct_sum(std::span<const Subspace<S>> parts) {
  if (parts.empty()) return true;
  Matrix<S> rows;
  std::size_t total = 0;
  for (const auto& p : parts) {
    detail::require_compatible(parts.front(), p);
    total += p.dim();
    rows.insert(rows.end(), p.rows().begin(), p.rows().end());
  }
  if (total > parts.front().ambient_dim()) return false;
  return row_reduce(rows, parts.front().ambient_dim()).size() == total;
}

template <ExactScalar S>
bool is_direct_sum(std::initializer_list<Subspace<S>> parts) {
  return is_direct_sum(std::span<const Subspace<S>>(parts.begin(), parts.size()));
}

/// First canonical basis row of `block` outside `inner`, or nothing when
/// inner == block. Requires inner ⊆ block.
template <ExactScalar S>
std::optional<Vector<S>> extension_vector(const Subspace<S>& block, const Subspace<S>& inner) {
  if (!is_subspace_of(inner, block)) throw PreconditionError("extension_vector: S is not contained in V_k");
  for (const auto& row : block.rows())
    if (!contains(inner, row)) return row;
  return std::nullopt;
}

/// Image {v M : v in U} under a square matrix (rows as vectors).
template <ExactScalar S>
Subspace<S> transform(const Subspace<S>& u, const Matrix<S>& m) {
  const std::size_t n = u.ambient_dim();
  if (m.size() != n) throw ShapeError("transform matrix has wrong size");
  Matrix<S> rows;
  for (const auto& r : u.rows()) {
    auto v = zero_vector<S>(n, u.field());
    for (std::size_t i = 0; i < n; ++i) {
      if (ScalarTraits<S>::is_zero(r[i])) continue;
      for (std::size_t j = 0; j < n; ++j) v[j] = v[j] + r[i] * m[i][j];
    }
    rows.push_back(std::move(v));
  }
  return Subspace<S>::span(n, u.field(), std::move(rows));
}

/// V = V_1 ⊕ ... ⊕ V_r, validated on construction.
template <ExactScalar S>
class Decomposition {
 public:
  Decomposition(std::size_t ambient_dim, const FieldTag& field, std::vector<Subspace<S>> blocks)
      : n_(ambient_dim), field_(field), blocks_(std::move(blocks)) {
    std::size_t total = 0;
    for (const auto& b : blocks_) {
      if (b.ambient_dim() != n_ || !(b.field() == field_))
        throw ShapeError("decomposition block lives in a different ambient space");
      total += b.dim();
    }
    if (total != n_ || !is_direct_sum(std::span<const Subspace<S>>(blocks_)))
      throw PreconditionError("blocks do not form a direct sum decomposition of the ambient space");
  }

  /// Single block V_1 = V.
  static Decomposition trivial(std::size_t ambient_dim, const FieldTag& field) {
    return Decomposition(ambient_dim, field, {Subspace<S>::full(ambient_dim, field)});
  }

  /// V_k = span{e_p : p in block k}; positions 1-based.
  static Decomposition coordinate(std::size_t ambient_dim, const FieldTag& field,
                                  const std::vector<std::vector<std::size_t>>& blocks) {
    std::vector<Subspace<S>> subs;
    for (const auto& b : blocks) subs.push_back(Subspace<S>::coordinate(ambient_dim, field, b));
    return Decomposition(ambient_dim, field, std::move(subs));
  }

  std::size_t ambient_dim() const noexcept { return n_; }
  const FieldTag& field() const noexcept { return field_; }
  std::size_t size() const noexcept { return blocks_.size(); }
  const Subspace<S>& operator[](std::size_t k) const { return blocks_[k]; }
  const std::vector<Subspace<S>>& blocks() const noexcept { return blocks_; }
  std::vector<std::size_t> block_dims() const {
    std::vector<std::size_t> dims;
    for (const auto& b : blocks_) dims.push_back(b.dim());
    return dims;
  }

  friend bool operator==(const Decomposition&, const Decomposition&) = default;

 private:
  std::size_t n_;
  FieldTag field_;
  std::vector<Subspace<S>> blocks_;
};

}  // namespace bollobas
