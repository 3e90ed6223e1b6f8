#pragma once

// Exhaustive ground truth over small prime fields. exhaust() only assembles
// Hankel blocks and takes ranks; it never touches the completion machinery,
// so it can certify that machinery.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mrc/overlap.hpp"

namespace mrc {

inline constexpr std::uint64_t kDefaultOracleBudget = 1'000'000;

class BudgetExceeded : public UsageError {
 public:
  BudgetExceeded(std::uint64_t required, std::uint64_t budget)
      : UsageError("enumeration needs " + (required == 0 ? std::string("more than 2^64") : std::to_string(required)) +
                   " candidates, budget is " + std::to_string(budget)),
        required_(required) {}
  /// 0 when the count does not fit in 64 bits.
  std::uint64_t required() const noexcept { return required_; }

 private:
  std::uint64_t required_;
};

struct ExhaustiveReport {
  std::vector<Index> min_rank_vector;
  /// In enumeration order.
  std::vector<Matrix<Residue>> simultaneous_minimizers;
  /// Number of candidates attaining the minimum of each block separately.
  std::vector<std::uint64_t> per_block_minimizer_counts;
  std::uint64_t candidates = 0;
};

struct CertifyResult {
  bool certified = false;
  std::string diagnostic;
  Index dimension = 0;
  std::uint64_t construction_count = 0;
  std::uint64_t minimizer_count = 0;
};

/// p^k, or nullopt once it exceeds `cap`.
std::optional<std::uint64_t> bounded_power(std::uint64_t p, std::uint64_t k, std::uint64_t cap);

/// Canonical residues of a matrix, row-major; used as a set key.
std::vector<std::uint64_t> matrix_key(const Matrix<Residue>& m, std::uint64_t p);

/// Decodes candidate number `t` into a rows x cols matrix. The first entry
/// (row-major) is the most significant digit, so increasing t walks the
/// candidates in lexicographic entry order.
Matrix<Residue> candidate_matrix(std::uint64_t t, Index rows, Index cols, std::uint64_t p);

ExhaustiveReport exhaust(const BlockProblem<Residue>& problem, std::uint64_t budget = kDefaultOracleBudget);

CertifyResult certify(const BlockProblem<Residue>& problem, std::uint64_t budget = kDefaultOracleBudget);

/// Every member of the construction's solution set, in free-choice order.
std::vector<Matrix<Residue>> enumerate_solutions(const BlockProblem<Residue>& problem, const IndexChains& chains,
                                                 Index dimension, std::uint64_t budget = kDefaultOracleBudget);

/// Every member of a 2x2 solution set over GF(p), in free-entry order.
std::vector<Matrix<Residue>> enumerate_two_by_two(const TwoByTwoProblem<Residue>& problem,
                                                  const TwoByTwoSolutionSet<Residue>& s, std::uint64_t p,
                                                  std::uint64_t budget = kDefaultOracleBudget);

}  // namespace mrc
