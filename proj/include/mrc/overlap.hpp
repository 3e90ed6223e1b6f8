#pragma once

// Simultaneous minimal rank completion of the corner block X of a block lower
// triangular array
//
//   [ A11                ]
//   [ A21  A22           ]
//   [  :    :    .       ]
//   [ X    An2  ...  Ann ]
//
// over the n overlapping Hankel blocks (rows k..n, block columns 1..k).
//
// Nested column sets L_n ⊆ ... ⊆ L_0 and row sets K_0 ⊆ ... ⊆ K_n of X induce
// a block partition X(I_i, J_j). The strictly upper blocks (i < j) are free;
// block row i below the diagonal is then fixed by one completion-lemma solve.
// All block indices in this header are 1-based.

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "mrc/block2x2.hpp"

namespace mrc {

using BlockKey = std::pair<int, int>;

inline std::string block_key_string(const BlockKey& k) {
  return std::to_string(k.first) + "," + std::to_string(k.second);
}

template <class S>
class BlockProblem {
 public:
  /// `row_sizes` and `col_sizes` hold n entries (block 1 first); `blocks`
  /// must contain exactly the keys (i, j) with i >= j, (i, j) != (n, 1).
  BlockProblem(FieldSpec field, std::vector<Index> row_sizes, std::vector<Index> col_sizes,
               std::map<BlockKey, Matrix<S>> blocks)
      : field_(field), row_sizes_(std::move(row_sizes)), col_sizes_(std::move(col_sizes)), blocks_(std::move(blocks)) {
    validate();
  }

  int n() const { return static_cast<int>(row_sizes_.size()); }
  const FieldSpec& field() const { return field_; }
  Index row_size(int i) const { return row_sizes_[static_cast<std::size_t>(i - 1)]; }
  Index col_size(int j) const { return col_sizes_[static_cast<std::size_t>(j - 1)]; }
  const std::vector<Index>& row_sizes() const { return row_sizes_; }
  const std::vector<Index>& col_sizes() const { return col_sizes_; }
  const std::map<BlockKey, Matrix<S>>& blocks() const { return blocks_; }
  const Matrix<S>& block(int i, int j) const { return blocks_.at({i, j}); }

  Index x_rows() const { return row_size(n()); }
  Index x_cols() const { return col_size(1); }

  /// Blocks A(r, c) for r0 <= r <= r1 and c0 <= c <= c1 assembled into one
  /// matrix. An empty row or column range yields a zero-height or zero-width
  /// result of the right size.
  Matrix<S> band(int r0, int r1, int c0, int c1) const {
    Index rows = 0, cols = 0;
    for (int r = r0; r <= r1; ++r) rows += row_size(r);
    for (int c = c0; c <= c1; ++c) cols += col_size(c);
    Matrix<S> out(rows, cols);
    Index at_r = 0;
    for (int r = r0; r <= r1; ++r) {
      Index at_c = 0;
      for (int c = c0; c <= c1; ++c) {
        if (r == n() && c == 1) throw UsageError("band: range covers the unknown corner block");
        out.block(at_r, at_c, row_size(r), col_size(c)) = block(r, c);
        at_c += col_size(c);
      }
      at_r += row_size(r);
    }
    return out;
  }

  /// The k-th Hankel block as [[B, C], [X, D]] with B the first block column
  /// over rows k..n-1, C block columns 2..k over rows k..n-1 and D the last
  /// block row over block columns 2..k.
  TwoByTwoProblem<S> hankel_problem(int k) const {
    if (k < 1 || k > n()) throw UsageError("hankel_problem: block index out of range");
    return {band(k, n() - 1, 1, 1), band(k, n() - 1, 2, k), band(n(), n(), 2, k)};
  }

  Matrix<S> hankel_block(int k, const Matrix<S>& x) const { return hankel_problem(k).completed(x); }

 private:
  void validate() const {
    if (row_sizes_.size() != col_sizes_.size()) throw UsageError("row_sizes and col_sizes differ in length");
    if (n() < 2) throw UsageError("n must be at least 2");
    if (!FieldTraits<S>::accepts(field_)) throw UsageError("scalar type does not match field " + field_.name());
    for (Index s : row_sizes_)
      if (s < 0) throw UsageError("negative row size");
    for (Index s : col_sizes_)
      if (s < 0) throw UsageError("negative column size");
    for (int i = 1; i <= n(); ++i) {
      for (int j = 1; j <= i; ++j) {
        if (i == n() && j == 1) continue;
        auto it = blocks_.find({i, j});
        if (it == blocks_.end()) throw UsageError("missing block \"" + block_key_string({i, j}) + "\"");
        if (it->second.rows() != row_size(i) || it->second.cols() != col_size(j)) {
          throw UsageError("block \"" + block_key_string({i, j}) + "\" has shape " + std::to_string(it->second.rows()) +
                           "x" + std::to_string(it->second.cols()) + ", expected " + std::to_string(row_size(i)) +
                           "x" + std::to_string(col_size(j)));
        }
        if constexpr (std::is_same_v<S, Residue>) {
          const Matrix<S>& m = it->second;
          for (Index r = 0; r < m.rows(); ++r)
            for (Index c = 0; c < m.cols(); ++c) m(r, c).canonical(field_.characteristic());
        }
      }
    }
    for (const auto& [key, m] : blocks_) {
      const auto [i, j] = key;
      if (i < 1 || i > n() || j < 1 || j > i || (i == n() && j == 1)) {
        throw UsageError("unexpected block \"" + block_key_string(key) + "\"");
      }
    }
  }

  FieldSpec field_;
  std::vector<Index> row_sizes_, col_sizes_;
  std::map<BlockKey, Matrix<S>> blocks_;
};

struct IndexChains {
  int n = 0;
  /// l[0..n] over the columns of X: l[0] is everything, l[n] is empty.
  std::vector<IndexSet> l;
  /// k[0..n] over the rows of X: k[0] is empty, k[n] is everything.
  std::vector<IndexSet> k;

  /// I_i = K_i \ K_{i-1}
  IndexSet row_part(int i) const { return k[static_cast<std::size_t>(i)].minus(k[static_cast<std::size_t>(i - 1)]); }
  /// J_j = L_{j-1} \ L_j
  IndexSet col_part(int j) const { return l[static_cast<std::size_t>(j - 1)].minus(l[static_cast<std::size_t>(j)]); }
  const IndexSet& big_l(int i) const { return l[static_cast<std::size_t>(i)]; }
  const IndexSet& big_k(int i) const { return k[static_cast<std::size_t>(i)]; }
};

template <class S>
struct OverlapSolutionSet {
  IndexChains chains;
  Index dimension = 0;
  /// alphas[i] = |K_i| for i = 0..n.
  std::vector<Index> alphas;
  /// betas[j] = |L_j| for j = 1..n; betas[0] holds |L_0| = cols(X).
  std::vector<Index> betas;
  /// block_opt_ranks[k-1] is the minimal rank of Hankel block k.
  std::vector<Index> block_opt_ranks;
  Matrix<S> base_solution;
};

/// Free blocks X(I_i, J_j) for i < j. Absent entries mean zero.
template <class S>
struct FreeChoiceOverlap {
  std::map<BlockKey, Matrix<S>> blocks;

  static FreeChoiceOverlap zero(const IndexChains& c) {
    FreeChoiceOverlap f;
    for (int i = 1; i <= c.n; ++i)
      for (int j = i + 1; j <= c.n; ++j)
        f.blocks[{i, j}] = Matrix<S>::Zero(c.row_part(i).size(), c.col_part(j).size());
    return f;
  }

  /// Fills the free blocks from a flat list, ordered by (i, j) and then row-major.
  static FreeChoiceOverlap from_flat(const IndexChains& c, const std::vector<S>& values) {
    FreeChoiceOverlap f = zero(c);
    std::size_t at = 0;
    for (auto& [key, m] : f.blocks) {
      for (Index r = 0; r < m.rows(); ++r)
        for (Index col = 0; col < m.cols(); ++col) {
          if (at >= values.size()) throw UsageError("from_flat: too few values");
          m(r, col) = values[at++];
        }
    }
    if (at != values.size()) throw UsageError("from_flat: too many values");
    return f;
  }
};

template <class S>
IndexChains build_chains(const BlockProblem<S>& p) {
  const int n = p.n();
  IndexChains c;
  c.n = n;
  c.l.assign(static_cast<std::size_t>(n + 1), IndexSet::none(p.x_cols()));
  c.k.assign(static_cast<std::size_t>(n + 1), IndexSet::none(p.x_rows()));
  c.l[0] = IndexSet::all(p.x_cols());
  c.k[static_cast<std::size_t>(n)] = IndexSet::all(p.x_rows());

  for (int i = n - 1; i >= 1; --i) {
    const Matrix<S> first = p.band(i, n - 1, 1, 1);
    const Matrix<S> rest = p.band(i, n - 1, 2, i);
    const IndexSet& below = c.big_l(i + 1);
    const IndexSet added = minimal_spanning_columns<S>(first, hstack<S>({select_cols(first, below), rest}));
    c.l[static_cast<std::size_t>(i)] = below.united(added);
  }
  for (int i = 1; i <= n - 1; ++i) {
    const Matrix<S> upper = p.band(i + 1, n - 1, 2, i + 1);
    const Matrix<S> last = p.band(n, n, 2, i + 1);
    const IndexSet& above = c.big_k(i - 1);
    const IndexSet added = minimal_spanning_rows<S>(last, vstack<S>({upper, select_rows(last, above)}));
    c.k[static_cast<std::size_t>(i)] = above.united(added);
  }
  return c;
}

/// Rank-difference counts, the solution-set dimension and the per-block
/// optimal ranks. The base solution is left empty.
template <class S>
OverlapSolutionSet<S> dimension_and_ranks(const BlockProblem<S>& p, const IndexChains& c) {
  const int n = p.n();
  OverlapSolutionSet<S> s;
  s.chains = c;
  s.alphas.assign(static_cast<std::size_t>(n + 1), 0);
  s.betas.assign(static_cast<std::size_t>(n + 1), 0);
  s.alphas[static_cast<std::size_t>(n)] = p.x_rows();
  s.betas[0] = p.x_cols();
  for (int i = 1; i <= n - 1; ++i) {
    s.alphas[static_cast<std::size_t>(i)] = rank(p.band(i + 1, n, 2, i + 1)) - rank(p.band(i + 1, n - 1, 2, i + 1));
  }
  for (int j = 1; j <= n; ++j) {
    s.betas[static_cast<std::size_t>(j)] = rank(p.band(j, n - 1, 1, j)) - rank(p.band(j, n - 1, 2, j));
  }

  Index by_ranks = 0, by_parts = 0;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
      by_ranks += (s.alphas[ui] - s.alphas[ui - 1]) * (s.betas[uj - 1] - s.betas[uj]);
      by_parts += c.row_part(i).size() * c.col_part(j).size();
    }
  }
  for (int i = 0; i <= n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    if (c.k[ui].size() != s.alphas[ui] || c.l[ui].size() != s.betas[ui]) {
      throw InvariantViolation("dimension_and_ranks: chain sizes disagree with rank differences at index " +
                               std::to_string(i));
    }
  }
  if (by_ranks != by_parts) throw InvariantViolation("dimension_and_ranks: dimension formulas disagree");
  s.dimension = by_ranks;

  for (int k = 1; k <= n; ++k) s.block_opt_ranks.push_back(r_opt(p.hankel_problem(k)));
  return s;
}

namespace detail {

template <class S>
Matrix<S> place_free(const BlockProblem<S>& p, const IndexChains& c, const FreeChoiceOverlap<S>& f) {
  Matrix<S> x = Matrix<S>::Zero(p.x_rows(), p.x_cols());
  for (const auto& [key, m] : f.blocks) {
    const auto [i, j] = key;
    if (i < 1 || j <= i || j > c.n) throw UsageError("free block \"" + block_key_string(key) + "\" is not strictly upper");
    const IndexSet rows = c.row_part(i), cols = c.col_part(j);
    if (m.rows() != rows.size() || m.cols() != cols.size()) {
      throw UsageError("free block \"" + block_key_string(key) + "\" should be " + std::to_string(rows.size()) + "x" +
                       std::to_string(cols.size()));
    }
    x(rows.indices(), cols.indices()) = m;
  }
  return x;
}

template <class S>
Matrix<S> solve_step(const UclInstance<S>& in) {
  try {
    return solve_ucl(in);
  } catch (const PreconditionError& e) {
    throw InvariantViolation(std::string("overlap construction: completion lemma hypotheses fail: ") + e.what());
  }
}

}  // namespace detail

/// Fills block rows i = 1..n in order; each X(I_i, L_0 \ L_i) is the unique
/// completion of a 3x3-partitioned problem whose known parts are the A blocks,
/// the finished rows K_{i-1} and the free row segment X(I_i, L_i).
template <class S>
Matrix<S> complete_overlap(const BlockProblem<S>& p, const IndexChains& c, const FreeChoiceOverlap<S>& f) {
  const int n = p.n();
  Matrix<S> x = detail::place_free(p, c, f);
  for (int i = 1; i <= n; ++i) {
    const IndexSet& keep = c.big_l(i);
    const IndexSet solved = keep.complement();
    const IndexSet& done = c.big_k(i - 1);
    const IndexSet now = c.row_part(i);
    const Matrix<S> first = p.band(i, n - 1, 1, 1);
    const Matrix<S> last = p.band(n, n, 2, i);

    UclInstance<S> in;
    in.b1 = select_cols(first, solved);
    in.c11 = select_cols(first, keep);
    in.c12 = p.band(i, n - 1, 2, i);
    in.b2 = submatrix(x, done, solved);
    in.c21 = submatrix(x, done, keep);
    in.c22 = select_rows(last, done);
    in.d1 = submatrix(x, now, keep);
    in.d2 = select_rows(last, now);
    x(now.indices(), solved.indices()) = detail::solve_step(in);
  }
  return x;
}

/// Alternative fill order: block columns j = n..1, each solving
/// X(I_j u ... u I_n, J_j) from the finished columns L_j and the free rows K_{j-1}.
/// Produces the same X as complete_overlap for the same free choice.
template <class S>
Matrix<S> complete_overlap_by_columns(const BlockProblem<S>& p, const IndexChains& c, const FreeChoiceOverlap<S>& f) {
  const int n = p.n();
  Matrix<S> x = detail::place_free(p, c, f);
  for (int j = n; j >= 1; --j) {
    const IndexSet now = c.col_part(j);
    const IndexSet& keep = c.big_l(j);
    const IndexSet& done = c.big_k(j - 1);
    const IndexSet open = done.complement();
    const Matrix<S> first = p.band(j, n - 1, 1, 1);
    const Matrix<S> last = p.band(n, n, 2, j);

    UclInstance<S> in;
    in.b1 = select_cols(first, now);
    in.c11 = select_cols(first, keep);
    in.c12 = p.band(j, n - 1, 2, j);
    in.b2 = submatrix(x, done, now);
    in.c21 = submatrix(x, done, keep);
    in.c22 = select_rows(last, done);
    in.d1 = submatrix(x, open, keep);
    in.d2 = select_rows(last, open);
    x(open.indices(), now.indices()) = detail::solve_step(in);
  }
  return x;
}

template <class S>
OverlapSolutionSet<S> analyze_overlap(const BlockProblem<S>& p) {
  const IndexChains c = build_chains(p);
  OverlapSolutionSet<S> s = dimension_and_ranks(p, c);
  s.base_solution = complete_overlap(p, c, FreeChoiceOverlap<S>::zero(c));
  const std::vector<Index> achieved = [&] {
    std::vector<Index> r;
    for (int k = 1; k <= p.n(); ++k) r.push_back(rank(p.hankel_block(k, s.base_solution)));
    return r;
  }();
  if (achieved != s.block_opt_ranks) throw InvariantViolation("analyze_overlap: base solution misses a block optimum");
  return s;
}

template <class S>
std::vector<Index> hankel_ranks(const BlockProblem<S>& p, const Matrix<S>& x) {
  if (x.rows() != p.x_rows() || x.cols() != p.x_cols()) {
    throw UsageError("hankel_ranks: X should be " + std::to_string(p.x_rows()) + "x" + std::to_string(p.x_cols()));
  }
  std::vector<Index> out;
  for (int k = 1; k <= p.n(); ++k) out.push_back(rank(p.hankel_block(k, x)));
  return out;
}

/// If Hankel block k alone has a unique minimizer, that X minimizes every
/// block simultaneously; otherwise nothing.
template <class S>
std::optional<Matrix<S>> uniqueness_shortcut(const BlockProblem<S>& p, int k) {
  const TwoByTwoSolutionSet<S> s = analyze(p.hankel_problem(k));
  if (s.dimension != 0) return std::nullopt;
  return s.base_solution;
}

}  // namespace mrc
