#include "mrc/oracle.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace mrc {

std::optional<std::uint64_t> bounded_power(std::uint64_t p, std::uint64_t k, std::uint64_t cap) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    if (out > cap / p) return std::nullopt;
    out *= p;
  }
  if (out > cap) return std::nullopt;
  return out;
}

std::vector<std::uint64_t> matrix_key(const Matrix<Residue>& m, std::uint64_t p) {
  std::vector<std::uint64_t> key;
  key.reserve(static_cast<std::size_t>(m.size()) + 2);
  key.push_back(static_cast<std::uint64_t>(m.rows()));
  key.push_back(static_cast<std::uint64_t>(m.cols()));
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) key.push_back(m(r, c).canonical(p));
  return key;
}

Matrix<Residue> candidate_matrix(std::uint64_t t, Index rows, Index cols, std::uint64_t p) {
  Matrix<Residue> x(rows, cols);
  for (Index k = rows * cols - 1; k >= 0; --k) {
    x(k / cols, k % cols) = Residue(static_cast<std::int64_t>(t % p), p);
    t /= p;
  }
  return x;
}

namespace {

std::uint64_t required_or_throw(std::uint64_t p, std::uint64_t k, std::uint64_t budget) {
  auto count = bounded_power(p, k, budget);
  if (!count) throw BudgetExceeded(bounded_power(p, k, std::numeric_limits<std::uint64_t>::max()).value_or(0), budget);
  return *count;
}

}  // namespace

ExhaustiveReport exhaust(const BlockProblem<Residue>& problem, std::uint64_t budget) {
  if (problem.field().is_rational()) throw UsageError("exhaustive search needs a finite field");
  const std::uint64_t p = problem.field().characteristic();
  const Index rows = problem.x_rows(), cols = problem.x_cols();
  const std::uint64_t total = required_or_throw(p, static_cast<std::uint64_t>(rows * cols), budget);
  const int n = problem.n();

  std::vector<std::vector<Index>> ranks(total);
  for (std::uint64_t t = 0; t < total; ++t) {
    const Matrix<Residue> x = candidate_matrix(t, rows, cols, p);
    auto& r = ranks[t];
    r.reserve(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) r.push_back(rank(problem.hankel_block(k, x)));
  }

  ExhaustiveReport report;
  report.candidates = total;
  report.min_rank_vector.assign(static_cast<std::size_t>(n), std::numeric_limits<Index>::max());
  for (const auto& r : ranks)
    for (std::size_t k = 0; k < r.size(); ++k) report.min_rank_vector[k] = std::min(report.min_rank_vector[k], r[k]);

  report.per_block_minimizer_counts.assign(static_cast<std::size_t>(n), 0);
  for (std::uint64_t t = 0; t < total; ++t) {
    bool all = true;
    for (std::size_t k = 0; k < ranks[t].size(); ++k) {
      if (ranks[t][k] == report.min_rank_vector[k]) {
        ++report.per_block_minimizer_counts[k];
      } else {
        all = false;
      }
    }
    if (all) report.simultaneous_minimizers.push_back(candidate_matrix(t, rows, cols, p));
  }
  return report;
}

std::vector<Matrix<Residue>> enumerate_solutions(const BlockProblem<Residue>& problem, const IndexChains& chains,
                                                 Index dimension, std::uint64_t budget) {
  const std::uint64_t p = problem.field().characteristic();
  const std::uint64_t total = required_or_throw(p, static_cast<std::uint64_t>(dimension), budget);
  std::vector<Matrix<Residue>> out;
  out.reserve(total);
  for (std::uint64_t t = 0; t < total; ++t) {
    const Matrix<Residue> flat = candidate_matrix(t, 1, dimension, p);
    std::vector<Residue> values(flat.data(), flat.data() + flat.size());
    out.push_back(complete_overlap(problem, chains, FreeChoiceOverlap<Residue>::from_flat(chains, values)));
  }
  return out;
}

std::vector<Matrix<Residue>> enumerate_two_by_two(const TwoByTwoProblem<Residue>& problem,
                                                  const TwoByTwoSolutionSet<Residue>& s, std::uint64_t p,
                                                  std::uint64_t budget) {
  const std::uint64_t total = required_or_throw(p, static_cast<std::uint64_t>(s.dimension), budget);
  FreeChoice2x2<Residue> f = FreeChoice2x2<Residue>::zero(s);
  std::vector<Matrix<Residue>> out;
  out.reserve(total);
  for (std::uint64_t t = 0; t < total; ++t) {
    const Matrix<Residue> flat = candidate_matrix(t, 1, s.dimension, p);
    Index at = 0;
    for (Matrix<Residue>* m : {&f.core_ext, &f.core_core, &f.ext_core, &f.core_rest, &f.rest_core}) {
      for (Index r = 0; r < m->rows(); ++r)
        for (Index c = 0; c < m->cols(); ++c) (*m)(r, c) = flat(0, at++);
    }
    out.push_back(complete(problem, s, f));
  }
  return out;
}

CertifyResult certify(const BlockProblem<Residue>& problem, std::uint64_t budget) {
  const std::uint64_t p = problem.field().characteristic();
  const ExhaustiveReport truth = exhaust(problem, budget);

  CertifyResult out;
  if (truth.simultaneous_minimizers.empty()) {
    out.diagnostic = "no simultaneous minimizer exists among " + std::to_string(truth.candidates) + " candidates";
    return out;
  }

  const IndexChains chains = build_chains(problem);
  const OverlapSolutionSet<Residue> s = dimension_and_ranks(problem, chains);
  out.dimension = s.dimension;
  out.minimizer_count = truth.simultaneous_minimizers.size();

  if (s.block_opt_ranks != truth.min_rank_vector) {
    out.diagnostic = "per-block optimal ranks differ from exhaustive minima";
    return out;
  }

  const std::vector<Matrix<Residue>> built = enumerate_solutions(problem, chains, s.dimension, budget);
  out.construction_count = built.size();

  std::set<std::vector<std::uint64_t>> built_keys, true_keys;
  for (const auto& x : truth.simultaneous_minimizers) true_keys.insert(matrix_key(x, p));
  for (std::size_t t = 0; t < built.size(); ++t) {
    if (!built_keys.insert(matrix_key(built[t], p)).second) {
      out.diagnostic = "free choice #" + std::to_string(t) + " repeats an earlier completion";
      return out;
    }
    if (!true_keys.count(matrix_key(built[t], p))) {
      out.diagnostic = "free choice #" + std::to_string(t) + " yields a non-minimizer";
      return out;
    }
  }
  if (built_keys != true_keys) {
    out.diagnostic = "construction misses " + std::to_string(true_keys.size() - built_keys.size()) + " minimizers";
    return out;
  }
  if (built.size() != truth.simultaneous_minimizers.size()) {
    out.diagnostic = "p^dimension differs from the minimizer count";
    return out;
  }
  out.certified = true;
  return out;
}

}  // namespace mrc
