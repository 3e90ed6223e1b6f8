#pragma once

// Block 2x2 minimal rank completion: choose X minimizing rank [[B, C], [X, D]].
//
// The columns of B are split into a core J (needed beyond Col C), an
// extension J' (completing a basis of Col B) and the rest J-bar; rows of D are
// split dually into I, I', I-bar. X(I, J'), X(I, J) and X(I', J) are free;
// X(I', J') comes from the unique completion lemma and the J-bar columns and
// I-bar rows follow from the span coefficients Q and R.
//
// That alone misses solutions whenever B lacks full column rank or D lacks
// full row rank: a J-bar column of X may still move along D z with C z = 0,
// and an I-bar row along w B with w C = 0. X(I, J-bar) and X(I-bar, J) are
// therefore free as well, and the full solution set has dimension
// |I| cols(B) + rows(D) |J| - |I| |J|.

#include "mrc/ucl.hpp"

namespace mrc {

template <class S>
struct TwoByTwoProblem {
  Matrix<S> b, c, d;

  void validate() const {
    if (b.rows() != c.rows()) throw UsageError("TwoByTwoProblem: rows(B) != rows(C)");
    if (c.cols() != d.cols()) throw UsageError("TwoByTwoProblem: cols(C) != cols(D)");
  }
  Index x_rows() const { return d.rows(); }
  Index x_cols() const { return b.cols(); }

  Matrix<S> completed(const Matrix<S>& x) const {
    if (x.rows() != x_rows() || x.cols() != x_cols()) throw UsageError("TwoByTwoProblem: X has the wrong shape");
    return vstack<S>({hstack<S>({b, c}), hstack<S>({x, d})});
  }
};

struct ColumnPartition {
  IndexSet rest;       // J-bar
  IndexSet extension;  // J'
  IndexSet core;       // J
};

struct RowPartition {
  IndexSet core;       // I
  IndexSet extension;  // I'
  IndexSet rest;       // I-bar
};

template <class S>
struct TwoByTwoSolutionSet {
  ColumnPartition cols;
  RowPartition rows;
  /// B(:, J u J') Q = B(:, J-bar)
  Matrix<S> q;
  /// D(I-bar, :) = R D(I u I', :)
  Matrix<S> r;
  /// rows(D) x |I|; columns are D z for z in ker C, identity on rows I.
  Matrix<S> col_lift;
  /// |J| x cols(B); rows are w B for w C = 0, identity on columns J.
  Matrix<S> row_lift;
  Index r_opt = 0;
  Index dimension = 0;
  Matrix<S> base_solution;
};

/// The free blocks. core_rest and rest_core are offsets from the values the
/// span coefficients Q and R would give; zero reproduces the Q/R-only fill.
template <class S>
struct FreeChoice2x2 {
  Matrix<S> core_ext;  // X(I, J')
  Matrix<S> core_core; // X(I, J)
  Matrix<S> ext_core;  // X(I', J)
  Matrix<S> core_rest; // X(I, J-bar) - X(I, J u J') Q
  Matrix<S> rest_core; // X(I-bar, J) - R X(I u I', J)

  static FreeChoice2x2 zero(const TwoByTwoSolutionSet<S>& s) {
    return {Matrix<S>::Zero(s.rows.core.size(), s.cols.extension.size()),
            Matrix<S>::Zero(s.rows.core.size(), s.cols.core.size()),
            Matrix<S>::Zero(s.rows.extension.size(), s.cols.core.size()),
            Matrix<S>::Zero(s.rows.core.size(), s.cols.rest.size()),
            Matrix<S>::Zero(s.rows.rest.size(), s.cols.core.size())};
  }
};

/// Lower bound rank[B C] + rank[C; D] - rank C, attained by every solution.
template <class S>
Index r_opt(const TwoByTwoProblem<S>& p) {
  p.validate();
  return rank<S>(hstack<S>({p.b, p.c})) + rank<S>(vstack<S>({p.c, p.d})) - rank(p.c);
}

template <class S>
Matrix<S> complete(const TwoByTwoProblem<S>& p, const TwoByTwoSolutionSet<S>& s, const FreeChoice2x2<S>& f) {
  const ColumnPartition& jc = s.cols;
  const RowPartition& ir = s.rows;
  auto shape = [](const Matrix<S>& m, Index r, Index c) { return m.rows() == r && m.cols() == c; };
  if (!shape(f.core_ext, ir.core.size(), jc.extension.size()) || !shape(f.core_core, ir.core.size(), jc.core.size()) ||
      !shape(f.ext_core, ir.extension.size(), jc.core.size()) || !shape(f.core_rest, ir.core.size(), jc.rest.size()) ||
      !shape(f.rest_core, ir.rest.size(), jc.core.size())) {
    throw UsageError("complete: free choice does not match the partition");
  }

  Matrix<S> x = Matrix<S>::Zero(p.x_rows(), p.x_cols());
  x(ir.core.indices(), jc.extension.indices()) = f.core_ext;
  x(ir.core.indices(), jc.core.indices()) = f.core_core;
  x(ir.extension.indices(), jc.core.indices()) = f.ext_core;

  UclInstance<S> in;
  in.b1 = select_cols(p.b, jc.extension);
  in.c11 = select_cols(p.b, jc.core);
  in.c12 = p.c;
  in.b2 = f.core_ext;
  in.c21 = f.core_core;
  in.c22 = select_rows(p.d, ir.core);
  in.d1 = f.ext_core;
  in.d2 = select_rows(p.d, ir.extension);
  try {
    x(ir.extension.indices(), jc.extension.indices()) = solve_ucl(in);
  } catch (const PreconditionError& e) {
    throw InvariantViolation(std::string("complete: completion lemma hypotheses fail: ") + e.what());
  }

  const IndexSet basis_cols = jc.core.united(jc.extension);
  const IndexSet basis_rows = ir.core.united(ir.extension);
  const Matrix<S> known = submatrix(x, basis_rows, basis_cols);
  x(basis_rows.indices(), jc.rest.indices()) = matmul(known, s.q);
  x(ir.rest.indices(), basis_cols.indices()) = matmul(s.r, known);
  x(ir.rest.indices(), jc.rest.indices()) = matmul<S>(matmul(s.r, known), s.q);

  // Shift the J-bar columns along D ker C and the I-bar rows along
  // (left ker C) B. The lifts are the identity on I and J respectively.
  x(Eigen::all, jc.rest.indices()) += matmul(s.col_lift, f.core_rest);
  x(ir.rest.indices(), Eigen::all) += matmul(f.rest_core, s.row_lift);
  return x;
}

template <class S>
TwoByTwoSolutionSet<S> analyze(const TwoByTwoProblem<S>& p) {
  p.validate();
  TwoByTwoSolutionSet<S> s;

  s.cols.core = minimal_spanning_columns(p.b, p.c);
  s.cols.extension = minimal_spanning_columns<S>(p.b, select_cols(p.b, s.cols.core));
  const IndexSet basis_cols = s.cols.core.united(s.cols.extension);
  s.cols.rest = basis_cols.complement();

  s.rows.core = minimal_spanning_rows(p.d, p.c);
  s.rows.extension = minimal_spanning_rows<S>(p.d, select_rows(p.d, s.rows.core));
  const IndexSet basis_rows = s.rows.core.united(s.rows.extension);
  s.rows.rest = basis_rows.complement();

  s.q = matmul<S>(left_inverse<S>(select_cols(p.b, basis_cols)), select_cols(p.b, s.cols.rest));
  s.r = matmul<S>(select_rows(p.d, s.rows.rest), right_inverse<S>(select_rows(p.d, basis_rows)));

  const Matrix<S> d_ker = matmul<S>(p.d, null_space(p.c));
  s.col_lift = matmul<S>(d_ker, right_inverse<S>(select_rows(d_ker, s.rows.core)));
  const Matrix<S> ker_b = matmul<S>(left_null_space(p.c), p.b);
  s.row_lift = matmul<S>(left_inverse<S>(select_cols(ker_b, s.cols.core)), ker_b);

  s.r_opt = r_opt(p);
  const Index nj = s.cols.core.size(), ni = s.rows.core.size();
  s.dimension = ni * p.x_cols() + (p.x_rows() - ni) * nj;

  const Index rc = rank(p.c);
  const Index row_excess = rank<S>(vstack<S>({p.c, p.d})) - rc;
  const Index col_excess = rank<S>(hstack<S>({p.b, p.c})) - rc;
  if (ni != row_excess || nj != col_excess) {
    throw InvariantViolation("analyze: core index sets disagree with the rank excesses");
  }

  s.base_solution = complete(p, s, FreeChoice2x2<S>::zero(s));
  return s;
}

template <class S>
bool is_minimal(const TwoByTwoProblem<S>& p, const Matrix<S>& x) {
  return rank(p.completed(x)) == r_opt(p);
}

}  // namespace mrc
