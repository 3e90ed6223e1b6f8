#pragma once

// Dense exact matrices over a field scalar S (Rational or Residue), with
// reduced row echelon machinery, greedy spanning-subset selection,
// distinguished one-sided inverses and subspace predicates. Every routine is
// total on matrices with zero rows or columns.

#include <Eigen/Core>

#include <algorithm>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "mrc/errors.hpp"
#include "mrc/field.hpp"

namespace mrc {

using Index = Eigen::Index;

template <class S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

/// Strictly increasing set of row or column indices drawn from [0, universe).
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(std::vector<Index> indices, Index universe);

  static IndexSet all(Index universe);
  static IndexSet none(Index universe) { return IndexSet({}, universe); }

  Index size() const { return static_cast<Index>(idx_.size()); }
  bool empty() const { return idx_.empty(); }
  Index universe() const { return universe_; }
  const std::vector<Index>& indices() const { return idx_; }
  Index operator[](Index k) const { return idx_[static_cast<std::size_t>(k)]; }
  auto begin() const { return idx_.begin(); }
  auto end() const { return idx_.end(); }

  bool contains(Index i) const { return std::binary_search(idx_.begin(), idx_.end(), i); }
  bool is_subset_of(const IndexSet& other) const;

  IndexSet united(const IndexSet& other) const;
  IndexSet minus(const IndexSet& other) const;
  IndexSet complement() const { return all(universe_).minus(*this); }

  /// Maps positions of a subset of the selection back to original indices.
  IndexSet compose(const IndexSet& positions) const;

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  std::vector<Index> idx_;
  Index universe_ = 0;
};

std::string to_string(const IndexSet& s);

// --- assembly ---------------------------------------------------------------

template <class S>
Matrix<S> hstack(const std::vector<Matrix<S>>& parts) {
  if (parts.empty()) throw UsageError("hstack of an empty list");
  Index rows = parts.front().rows(), cols = 0;
  for (const auto& p : parts) {
    if (p.rows() != rows) throw UsageError("hstack: row count mismatch");
    cols += p.cols();
  }
  Matrix<S> out(rows, cols);
  Index at = 0;
  for (const auto& p : parts) {
    out.middleCols(at, p.cols()) = p;
    at += p.cols();
  }
  return out;
}

template <class S>
Matrix<S> vstack(const std::vector<Matrix<S>>& parts) {
  if (parts.empty()) throw UsageError("vstack of an empty list");
  Index cols = parts.front().cols(), rows = 0;
  for (const auto& p : parts) {
    if (p.cols() != cols) throw UsageError("vstack: column count mismatch");
    rows += p.rows();
  }
  Matrix<S> out(rows, cols);
  Index at = 0;
  for (const auto& p : parts) {
    out.middleRows(at, p.rows()) = p;
    at += p.rows();
  }
  return out;
}

template <class S>
Matrix<S> matmul(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.cols() != b.rows()) throw UsageError("matmul: inner dimension mismatch");
  Matrix<S> out = Matrix<S>::Zero(a.rows(), b.cols());
  for (Index k = 0; k < a.cols(); ++k) {
    for (Index i = 0; i < a.rows(); ++i) {
      if (a(i, k).is_zero()) continue;
      for (Index j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  }
  return out;
}

template <class S>
Matrix<S> submatrix(const Matrix<S>& m, const IndexSet& rows, const IndexSet& cols) {
  if (rows.universe() != m.rows() || cols.universe() != m.cols()) {
    throw UsageError("submatrix: index sets do not match matrix shape");
  }
  return m(rows.indices(), cols.indices());
}

template <class S>
Matrix<S> select_rows(const Matrix<S>& m, const IndexSet& rows) {
  return submatrix(m, rows, IndexSet::all(m.cols()));
}

template <class S>
Matrix<S> select_cols(const Matrix<S>& m, const IndexSet& cols) {
  return submatrix(m, IndexSet::all(m.rows()), cols);
}

template <class S>
Matrix<S> assign_submatrix(Matrix<S> m, const IndexSet& rows, const IndexSet& cols, const Matrix<S>& block) {
  if (rows.universe() != m.rows() || cols.universe() != m.cols()) {
    throw UsageError("assign_submatrix: index sets do not match matrix shape");
  }
  if (block.rows() != rows.size() || block.cols() != cols.size()) {
    throw UsageError("assign_submatrix: block shape mismatch");
  }
  m(rows.indices(), cols.indices()) = block;
  return m;
}

template <class S>
Matrix<S> identity(Index n) {
  return Matrix<S>::Identity(n, n);
}

/// The field's one, taken from the first entry of `ms` that carries its field.
template <class S>
S one_like(std::initializer_list<const Matrix<S>*> ms) {
  for (const Matrix<S>* m : ms) {
    for (Index i = 0; i < m->rows(); ++i)
      for (Index j = 0; j < m->cols(); ++j)
        if (!is_literal((*m)(i, j))) return unit_like((*m)(i, j));
  }
  return S(1);
}

// --- elimination ------------------------------------------------------------

template <class S>
struct RrefResult {
  Matrix<S> reduced;
  IndexSet pivot_cols;
  /// Invertible; transform * m == reduced.
  Matrix<S> transform;
};

/// Gauss-Jordan elimination. Pivot columns are taken greedily left to right,
/// so column j is a pivot iff it is independent of columns 0..j-1.
template <class S>
RrefResult<S> rref(const Matrix<S>& m) {
  Matrix<S> r = m;
  Matrix<S> t = identity<S>(m.rows());
  std::vector<Index> pivots;
  Index row = 0;
  for (Index col = 0; col < r.cols() && row < r.rows(); ++col) {
    Index p = row;
    while (p < r.rows() && r(p, col).is_zero()) ++p;
    if (p == r.rows()) continue;
    if (p != row) {
      r.row(p).swap(r.row(row));
      t.row(p).swap(t.row(row));
    }
    const S inv = r(row, col).inverse();
    for (Index j = 0; j < r.cols(); ++j) r(row, j) *= inv;
    for (Index j = 0; j < t.cols(); ++j) t(row, j) *= inv;
    for (Index i = 0; i < r.rows(); ++i) {
      if (i == row || r(i, col).is_zero()) continue;
      const S f = r(i, col);
      for (Index j = 0; j < r.cols(); ++j) r(i, j) -= f * r(row, j);
      for (Index j = 0; j < t.cols(); ++j) t(i, j) -= f * t(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(r), IndexSet(std::move(pivots), m.cols()), std::move(t)};
}

template <class S>
Index rank(const Matrix<S>& m) {
  // Eliminate along the shorter side.
  if (m.rows() > m.cols()) return rref<S>(m.transpose()).pivot_cols.size();
  return rref(m).pivot_cols.size();
}

/// Basis of {z : m z = 0} as columns, one per non-pivot column of rref(m).
template <class S>
Matrix<S> null_space(const Matrix<S>& m) {
  const RrefResult<S> r = rref(m);
  const IndexSet free_cols = r.pivot_cols.complement();
  Matrix<S> out = Matrix<S>::Zero(m.cols(), free_cols.size());
  for (Index k = 0; k < free_cols.size(); ++k) {
    const Index f = free_cols.indices()[static_cast<std::size_t>(k)];
    out(f, k) = S(1);
    for (Index row = 0; row < r.pivot_cols.size(); ++row) {
      out(r.pivot_cols.indices()[static_cast<std::size_t>(row)], k) = -r.reduced(row, f);
    }
  }
  return out;
}

/// Basis of {w : w m = 0} as rows.
template <class S>
Matrix<S> left_null_space(const Matrix<S>& m) {
  return null_space<S>(m.transpose()).transpose();
}

/// Greedy lowest-index-first minimal set of columns of `extra` whose span
/// together with Col(anchor) equals Col[extra anchor].
template <class S>
IndexSet minimal_spanning_columns(const Matrix<S>& extra, const Matrix<S>& anchor) {
  if (extra.rows() != anchor.rows()) throw UsageError("minimal_spanning_columns: row count mismatch");
  const IndexSet pivots = rref<S>(hstack<S>({anchor, extra})).pivot_cols;
  std::vector<Index> chosen;
  for (Index c : pivots) {
    if (c >= anchor.cols()) chosen.push_back(c - anchor.cols());
  }
  return IndexSet(std::move(chosen), extra.cols());
}

/// Row dual of minimal_spanning_columns.
template <class S>
IndexSet minimal_spanning_rows(const Matrix<S>& extra, const Matrix<S>& anchor) {
  if (extra.cols() != anchor.cols()) throw UsageError("minimal_spanning_rows: column count mismatch");
  return minimal_spanning_columns<S>(extra.transpose(), anchor.transpose());
}

/// Greedy maximal independent subset of the rows.
template <class S>
IndexSet independent_rows(const Matrix<S>& m) {
  return minimal_spanning_rows<S>(m, Matrix<S>(0, m.cols()));
}

template <class S>
IndexSet independent_cols(const Matrix<S>& m) {
  return minimal_spanning_columns<S>(m, Matrix<S>(m.rows(), 0));
}

template <class S>
Matrix<S> inverse(const Matrix<S>& m) {
  if (m.rows() != m.cols()) throw UsageError("inverse of a non-square matrix");
  RrefResult<S> res = rref(m);
  if (res.pivot_cols.size() != m.rows()) throw PreconditionError("matrix is singular");
  return res.transform;
}

/// Distinguished left inverse: invert the greedily chosen independent rows
/// and zero-pad the remaining columns.
template <class S>
Matrix<S> left_inverse(const Matrix<S>& m) {
  const IndexSet rows = independent_rows(m);
  if (rows.size() != m.cols()) throw PreconditionError("left_inverse: matrix lacks full column rank");
  Matrix<S> out = Matrix<S>::Zero(m.cols(), m.rows());
  out(Eigen::all, rows.indices()) = inverse<S>(select_rows(m, rows));
  return out;
}

template <class S>
Matrix<S> right_inverse(const Matrix<S>& m) {
  const IndexSet cols = independent_cols(m);
  if (cols.size() != m.rows()) throw PreconditionError("right_inverse: matrix lacks full row rank");
  Matrix<S> out = Matrix<S>::Zero(m.cols(), m.rows());
  out(cols.indices(), Eigen::all) = inverse<S>(select_cols(m, cols));
  return out;
}

// --- subspace predicates ----------------------------------------------------

template <class S>
bool row_space_contained(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.cols() != b.cols()) throw UsageError("row_space_contained: column count mismatch");
  return rank<S>(vstack<S>({a, b})) == rank(b);
}

template <class S>
bool col_space_contained(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.rows() != b.rows()) throw UsageError("col_space_contained: row count mismatch");
  return rank<S>(hstack<S>({a, b})) == rank(b);
}

template <class S>
bool trivial_col_intersection(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.rows() != b.rows()) throw UsageError("trivial_col_intersection: row count mismatch");
  return rank<S>(hstack<S>({a, b})) == rank(a) + rank(b);
}

template <class S>
bool trivial_row_intersection(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.cols() != b.cols()) throw UsageError("trivial_row_intersection: column count mismatch");
  return rank<S>(vstack<S>({a, b})) == rank(a) + rank(b);
}

template <class S>
bool full_col_rank(const Matrix<S>& m) {
  return rank(m) == m.cols();
}

template <class S>
bool full_row_rank(const Matrix<S>& m) {
  return rank(m) == m.rows();
}

}  // namespace mrc
