#pragma once

// Unique completion of a 3x3-partitioned block 2x2 problem
//
//   [ B1 | C11 C12 ]
//   [ B2 | C21 C22 ]
//   [ X  | D1  D2  ]
//
// When the six span/independence hypotheses hold, X = D C^{-1} B is the only
// rank-minimizing completion and it depends affinely on (B2, C21, D1).

#include <array>
#include <string>

#include "mrc/exact_matrix.hpp"

namespace mrc {

template <class S>
struct UclInstance {
  Matrix<S> b1, b2;
  Matrix<S> c11, c12, c21, c22;
  Matrix<S> d1, d2;

  /// Throws UsageError if the blocks are not conformally partitioned.
  void validate() const {
    auto need = [](bool ok, const char* what) {
      if (!ok) throw UsageError(std::string("UclInstance: ") + what);
    };
    need(b1.rows() == c11.rows() && c11.rows() == c12.rows(), "first block row heights differ");
    need(b2.rows() == c21.rows() && c21.rows() == c22.rows(), "second block row heights differ");
    need(d1.rows() == d2.rows(), "last block row heights differ");
    need(b1.cols() == b2.cols(), "B column widths differ");
    need(c11.cols() == c21.cols() && c21.cols() == d1.cols(), "first C column widths differ");
    need(c12.cols() == c22.cols() && c22.cols() == d2.cols(), "second C column widths differ");
  }

  Matrix<S> b() const { return vstack<S>({b1, b2}); }
  Matrix<S> c() const { return vstack<S>({hstack<S>({c11, c12}), hstack<S>({c21, c22})}); }
  Matrix<S> d() const { return hstack<S>({d1, d2}); }

  Index x_rows() const { return d1.rows(); }
  Index x_cols() const { return b1.cols(); }

  /// The full matrix [[B, C], [X, D]].
  Matrix<S> completed(const Matrix<S>& x) const {
    if (x.rows() != x_rows() || x.cols() != x_cols()) throw UsageError("UclInstance: X has the wrong shape");
    return vstack<S>({hstack<S>({b(), c()}), hstack<S>({x, d()})});
  }
};

struct UclHypothesisReport {
  std::array<bool, 6> holds{};

  bool admissible() const {
    for (bool h : holds)
      if (!h) return false;
    return true;
  }
  /// 1-based index of the first failing hypothesis, 0 if admissible.
  int first_failure() const {
    for (int k = 0; k < 6; ++k)
      if (!holds[static_cast<std::size_t>(k)]) return k + 1;
    return 0;
  }
};

template <class S>
UclHypothesisReport check_hypotheses(const UclInstance<S>& in) {
  in.validate();
  UclHypothesisReport r;
  const Matrix<S> top_c = hstack<S>({in.c11, in.c12});
  const Matrix<S> right_c = vstack<S>({in.c12, in.c22});
  r.holds[0] = col_space_contained<S>(in.b1, top_c);
  r.holds[1] = row_space_contained<S>(in.d2, right_c);
  r.holds[2] = trivial_col_intersection(in.c11, in.c12);
  r.holds[3] = trivial_row_intersection(in.c22, in.c12);
  r.holds[4] = full_col_rank(in.c11);
  r.holds[5] = full_row_rank(in.c22);
  return r;
}

/// Inverse of C = [[C11, C12], [C21, C22]] assembled block by block:
///   Y11 = [I 0] [C11 C12]^R,   Y12 = 0,
///   Y22 = [C12; C22]^L [0; I],
///   Y21 = ([0 I] - Y22 [C21 C22]) [C11 C12]^R.
template <class S>
Matrix<S> block_c_inverse(const Matrix<S>& c11, const Matrix<S>& c12, const Matrix<S>& c21, const Matrix<S>& c22) {
  const Matrix<S> c = vstack<S>({hstack<S>({c11, c12}), hstack<S>({c21, c22})});
  if (c.rows() != c.cols()) throw PreconditionError("block_c_inverse: C is not square");
  if (!trivial_col_intersection(c11, c12)) throw PreconditionError("block_c_inverse: Col C11 meets Col C12", 3);
  if (!trivial_row_intersection(c22, c12)) throw PreconditionError("block_c_inverse: Row C22 meets Row C12", 4);
  if (!full_col_rank(c11)) throw PreconditionError("block_c_inverse: C11 lacks full column rank", 5);
  if (!full_row_rank(c22)) throw PreconditionError("block_c_inverse: C22 lacks full row rank", 6);
  if (rank(c) != c.rows()) throw PreconditionError("block_c_inverse: C is singular");

  const Index k1 = c11.rows(), k2 = c21.rows();  // row split of C
  const Index l1 = c11.cols(), l2 = c12.cols();  // column split of C
  const Matrix<S> top_right_inv = right_inverse<S>(hstack<S>({c11, c12}));  // (l1+l2) x k1
  const Matrix<S> right_left_inv = left_inverse<S>(vstack<S>({c12, c22}));  // l2 x (k1+k2)

  const Matrix<S> y11 = top_right_inv.topRows(l1);
  const Matrix<S> y22 = right_left_inv.rightCols(k2);
  Matrix<S> lower_selector = Matrix<S>::Zero(l2, l1 + l2);
  lower_selector.rightCols(l2) = identity<S>(l2);
  const Matrix<S> y21 = matmul<S>(lower_selector - matmul<S>(y22, hstack<S>({c21, c22})), top_right_inv);

  Matrix<S> out = Matrix<S>::Zero(l1 + l2, k1 + k2);
  out.topLeftCorner(l1, k1) = y11;
  out.bottomLeftCorner(l2, k1) = y21;
  out.bottomRightCorner(l2, k2) = y22;

  if (matmul(c, out) != identity<S>(c.rows())) {
    throw InvariantViolation("block_c_inverse: assembled inverse fails C * C^{-1} = I");
  }
  return out;
}

/// The unique rank-minimizing X. Redundant rows of [B1 C11 C12] and redundant
/// columns of [C12; C22; D2] are dropped first (greedy lowest index kept),
/// after which C is square and invertible and X = D C^{-1} B.
template <class S>
Matrix<S> solve_ucl(const UclInstance<S>& in) {
  const UclHypothesisReport report = check_hypotheses(in);
  if (!report.admissible()) {
    const int h = report.first_failure();
    throw PreconditionError("solve_ucl: hypothesis (" + std::to_string(h) + ") fails", h);
  }

  const IndexSet keep_rows = independent_rows<S>(hstack<S>({in.b1, in.c11, in.c12}));
  const IndexSet keep_cols = independent_cols<S>(vstack<S>({in.c12, in.c22, in.d2}));

  const Matrix<S> b1 = select_rows(in.b1, keep_rows);
  const Matrix<S> c11 = select_rows(in.c11, keep_rows);
  const Matrix<S> c12 = submatrix(in.c12, keep_rows, keep_cols);
  const Matrix<S> c22 = select_cols(in.c22, keep_cols);
  const Matrix<S> d2 = select_cols(in.d2, keep_cols);

  if (c11.rows() + in.c21.rows() != c11.cols() + c12.cols()) {
    throw InvariantViolation("solve_ucl: reduced C is not square");
  }
  const Matrix<S> c_inv = block_c_inverse(c11, c12, in.c21, c22);
  return matmul<S>(matmul<S>(hstack<S>({in.d1, d2}), c_inv), vstack<S>({b1, in.b2}));
}

/// X = D1 E + F C21 G + H B2 + K as (B2, C21, D1) vary with the rest fixed.
template <class S>
struct AffineCoefficients {
  Matrix<S> e, f, g, h, k;

  Matrix<S> evaluate(const Matrix<S>& b2, const Matrix<S>& c21, const Matrix<S>& d1) const {
    return matmul(d1, e) + matmul<S>(matmul(f, c21), g) + matmul(h, b2) + k;
  }
};

/// Coefficients recovered by probing solve_ucl with unit perturbations.
/// Coefficients that cannot influence X (because X has no rows or no
/// columns) are returned as zero.
template <class S>
AffineCoefficients<S> affine_coefficients(const UclInstance<S>& in) {
  const Index xr = in.x_rows(), xc = in.x_cols();
  UclInstance<S> probe = in;
  probe.b2.setZero();
  probe.c21.setZero();
  probe.d1.setZero();

  const S one = one_like<S>({&in.b1, &in.b2, &in.c11, &in.c12, &in.c21, &in.c22, &in.d1, &in.d2});

  AffineCoefficients<S> out;
  out.k = solve_ucl(probe);
  out.e = Matrix<S>::Zero(in.d1.cols(), xc);
  out.h = Matrix<S>::Zero(xr, in.b2.rows());
  out.f = Matrix<S>::Zero(xr, in.c21.rows());
  out.g = Matrix<S>::Zero(in.c21.cols(), xc);
  if (xr == 0 || xc == 0) return out;

  // D1 = unit(0, j): row 0 of X - K is E(j, :).
  for (Index j = 0; j < in.d1.cols(); ++j) {
    UclInstance<S> p = probe;
    p.d1(0, j) = one;
    out.e.row(j) = (solve_ucl(p) - out.k).row(0);
  }
  // B2 = unit(i, 0): column 0 of X - K is H(:, i).
  for (Index i = 0; i < in.b2.rows(); ++i) {
    UclInstance<S> p = probe;
    p.b2(i, 0) = one;
    out.h.col(i) = (solve_ucl(p) - out.k).col(0);
  }
  // C21 = unit(a, b): X - K = F(:, a) G(b, :). The products form a rank-one
  // tensor T[(r, a), (b, c)] = F(r, a) G(b, c); factor it through a pivot.
  const Index ca = in.c21.rows(), cb = in.c21.cols();
  std::vector<Matrix<S>> slices(static_cast<std::size_t>(ca * cb));
  bool found = false;
  Index pa = 0, pb = 0, pr = 0, pc = 0;
  for (Index a = 0; a < ca; ++a) {
    for (Index b = 0; b < cb; ++b) {
      UclInstance<S> p = probe;
      p.c21(a, b) = one;
      Matrix<S>& t = slices[static_cast<std::size_t>(a * cb + b)];
      t = solve_ucl(p) - out.k;
      for (Index r = 0; r < xr && !found; ++r) {
        for (Index c = 0; c < xc && !found; ++c) {
          if (!t(r, c).is_zero()) {
            found = true;
            pa = a; pb = b; pr = r; pc = c;
          }
        }
      }
    }
  }
  if (!found) return out;
  const auto slice = [&](Index a, Index b) -> const Matrix<S>& { return slices[static_cast<std::size_t>(a * cb + b)]; };
  const S pivot_inv = slice(pa, pb)(pr, pc).inverse();
  for (Index a = 0; a < ca; ++a) {
    for (Index r = 0; r < xr; ++r) out.f(r, a) = slice(a, pb)(r, pc);
  }
  for (Index b = 0; b < cb; ++b) {
    for (Index c = 0; c < xc; ++c) out.g(b, c) = slice(pa, b)(pr, c) * pivot_inv;
  }
  return out;
}

}  // namespace mrc
