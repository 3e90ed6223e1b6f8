#include <gtest/gtest.h>

#include "mrc/overlap.hpp"
#include "support/random_instances.hpp"

using namespace mrc;
using namespace mrc::testing;

namespace {

const FieldSpec kQ = FieldSpec::rational();
const FieldSpec kGF2 = FieldSpec::prime_field(2);
const FieldSpec kGF3 = FieldSpec::prime_field(3);

/// n = 2 with A11 = [1], A22 = [1] and the corner X = A21 unknown.
template <class S>
BlockProblem<S> diagonal_ones(const FieldSpec& f) {
  std::map<BlockKey, Matrix<S>> blocks{{{1, 1}, from_ints<S>(f, {{1}})}, {{2, 2}, from_ints<S>(f, {{1}})}};
  return BlockProblem<S>(f, {1, 1}, {1, 1}, blocks);
}

IndexSet set(std::vector<Index> v, Index universe) { return IndexSet(std::move(v), universe); }

/// Componentwise minimum of the Hankel ranks over every X in GF(p).
std::vector<Index> brute_min_ranks(const BlockProblem<Residue>& p) {
  const std::uint64_t prime = p.field().characteristic();
  std::vector<Index> best(static_cast<std::size_t>(p.n()), std::numeric_limits<Index>::max());
  for_each_matrix(p.x_rows(), p.x_cols(), prime, [&](const Matrix<Residue>& x) {
    for (int k = 1; k <= p.n(); ++k) {
      auto& b = best[static_cast<std::size_t>(k - 1)];
      b = std::min(b, minor_rank(p.hankel_block(k, x), Residue(1, prime)));
    }
  });
  return best;
}

}  // namespace

TEST(BlockProblem, Validation) {
  const FieldSpec f = kQ;
  auto one = from_ints<Rational>(f, {{1}});
  using Blocks = std::map<BlockKey, Matrix<Rational>>;
  try {
    BlockProblem<Rational>(f, {1, 1}, {1, 1}, Blocks{{{1, 1}, one}});
    FAIL();
  } catch (const UsageError& e) {
    EXPECT_NE(std::string(e.what()).find("\"2,2\""), std::string::npos) << e.what();
  }
  EXPECT_THROW(BlockProblem<Rational>(f, {1}, {1}, Blocks{{{1, 1}, one}}), UsageError);
  EXPECT_THROW(BlockProblem<Rational>(f, {1, 1}, {1, 1}, Blocks{{{1, 1}, one}, {{2, 2}, one}, {{2, 1}, one}}),
               UsageError);
  EXPECT_THROW(BlockProblem<Rational>(f, {1, 1}, {1, 1}, Blocks{{{1, 1}, one}, {{2, 2}, one}, {{1, 2}, one}}),
               UsageError);
  EXPECT_THROW(BlockProblem<Rational>(f, {2, 1}, {1, 1}, Blocks{{{1, 1}, one}, {{2, 2}, one}}), UsageError);
  EXPECT_THROW(BlockProblem<Rational>(f, {1, 1}, {1}, Blocks{{{1, 1}, one}, {{2, 2}, one}}), UsageError);
  EXPECT_THROW(BlockProblem<Rational>(FieldSpec::prime_field(2), {1, 1}, {1, 1}, Blocks{{{1, 1}, one}, {{2, 2}, one}}),
               UsageError);
  EXPECT_THROW(BlockProblem<Residue>(kGF3, {1, 1}, {1, 1},
                                     std::map<BlockKey, Matrix<Residue>>{{{1, 1}, from_ints<Residue>(kGF2, {{1}})},
                                                                          {{2, 2}, from_ints<Residue>(kGF3, {{1}})}}),
               UsageError);
}

TEST(BlockProblem, HankelBlocksAndBand) {
  Rng rng(41);
  const auto p = random_problem<Rational>(rng, kQ, 3, 1, 2);
  EXPECT_THROW(p.band(3, 3, 1, 1), UsageError);
  EXPECT_THROW(p.hankel_problem(0), UsageError);
  EXPECT_THROW(p.hankel_problem(4), UsageError);
  const Matrix<Rational> x = random_matrix<Rational>(rng, kQ, p.x_rows(), p.x_cols());
  // Block 1 is the first block column; block n is the last block row.
  EXPECT_EQ(p.hankel_block(1, x), vstack<Rational>({p.band(1, 2, 1, 1), x}));
  EXPECT_EQ(p.hankel_block(3, x), hstack<Rational>({x, p.band(3, 3, 2, 3)}));
  EXPECT_EQ(p.hankel_block(2, x),
            vstack<Rational>({hstack<Rational>({p.block(2, 1), p.block(2, 2)}), hstack<Rational>({x, p.block(3, 2)})}));
  EXPECT_EQ(p.band(2, 1, 1, 1).rows(), 0);
}

TEST(BuildChains, DiagonalOnes) {
  const auto p = diagonal_ones<Residue>(kGF2);
  const IndexChains c = build_chains(p);
  EXPECT_EQ(c.big_l(1), set({0}, 1));
  EXPECT_EQ(c.big_k(1), set({0}, 1));
  EXPECT_EQ(c.row_part(1), set({0}, 1));
  EXPECT_EQ(c.col_part(2), set({0}, 1));
  EXPECT_TRUE(c.col_part(1).empty());
  EXPECT_TRUE(c.row_part(2).empty());
}

TEST(BuildChains, ZeroProblem) {
  for (int n = 2; n <= 5; ++n) {
    const auto p = zero_problem<Rational>(kQ, std::vector<Index>(static_cast<std::size_t>(n), 1),
                                          std::vector<Index>(static_cast<std::size_t>(n), 1));
    const IndexChains c = build_chains(p);
    for (int i = 1; i <= n; ++i) EXPECT_TRUE(c.big_l(i).empty());
    for (int i = 0; i <= n - 1; ++i) EXPECT_TRUE(c.big_k(i).empty());
    EXPECT_EQ(c.row_part(n), IndexSet::all(1));
    EXPECT_EQ(c.col_part(1), IndexSet::all(1));
  }
}

TEST(BuildChains, SpanConditionsAndMinimality) {
  Rng rng(42);
  for (int t = 0; t < 100; ++t) {
    const int n = static_cast<int>(uniform(rng, 2, 4));
    const auto p = random_problem<Residue>(rng, t % 2 ? kGF2 : kGF3, n, 0, 3);
    const IndexChains c = build_chains(p);
    EXPECT_TRUE(c.big_l(n).empty());
    EXPECT_EQ(c.big_l(0), IndexSet::all(p.x_cols()));
    EXPECT_TRUE(c.big_k(0).empty());
    EXPECT_EQ(c.big_k(n), IndexSet::all(p.x_rows()));
    for (int i = 1; i <= n; ++i) {
      EXPECT_TRUE(c.big_l(i).is_subset_of(c.big_l(i - 1)));
      EXPECT_TRUE(c.big_k(i - 1).is_subset_of(c.big_k(i)));
    }
    for (int i = 1; i <= n - 1; ++i) {
      // Col [A(i..n-1, 1)(:, L_i)  A(i..n-1, 2..i)] = Col A(i..n-1, 1..i), with no spare column.
      const auto first = p.band(i, n - 1, 1, 1), rest = p.band(i, n - 1, 2, i);
      const Index full = rank<Residue>(hstack<Residue>({first, rest}));
      EXPECT_EQ(rank<Residue>(hstack<Residue>({select_cols(first, c.big_l(i)), rest})), full);
      const Index below = rank<Residue>(hstack<Residue>({select_cols(first, c.big_l(i + 1)), rest}));
      EXPECT_EQ(c.big_l(i).size() - c.big_l(i + 1).size(), full - below);

      // Row [A(i+1..n-1, 2..i+1); A(n, 2..i+1)(K_i, :)] = Row A(i+1..n, 2..i+1), with no spare row.
      const auto upper = p.band(i + 1, n - 1, 2, i + 1), last = p.band(n, n, 2, i + 1);
      const Index row_full = rank<Residue>(vstack<Residue>({upper, last}));
      EXPECT_EQ(rank<Residue>(vstack<Residue>({upper, select_rows(last, c.big_k(i))})), row_full);
      const Index above = rank<Residue>(vstack<Residue>({upper, select_rows(last, c.big_k(i - 1))}));
      EXPECT_EQ(c.big_k(i).size() - c.big_k(i - 1).size(), row_full - above);
    }
  }
}

TEST(DimensionAndRanks, DiagonalOnes) {
  const auto p = diagonal_ones<Residue>(kGF2);
  const auto s = dimension_and_ranks(p, build_chains(p));
  EXPECT_EQ(s.alphas, (std::vector<Index>{0, 1, 1}));
  EXPECT_EQ(s.betas[1], 1);
  EXPECT_EQ(s.betas[2], 0);
  EXPECT_EQ(s.dimension, 1);
  EXPECT_EQ(s.block_opt_ranks, (std::vector<Index>{1, 1}));
}

TEST(DimensionAndRanks, ZeroProblem) {
  const auto p = zero_problem<Rational>(kQ, {2, 1, 2}, {1, 2, 1});
  const auto s = dimension_and_ranks(p, build_chains(p));
  EXPECT_EQ(s.alphas, (std::vector<Index>{0, 0, 0, 2}));
  EXPECT_EQ(s.betas, (std::vector<Index>{1, 0, 0, 0}));
  EXPECT_EQ(s.dimension, 0);
  EXPECT_EQ(s.block_opt_ranks, (std::vector<Index>{0, 0, 0}));
}

TEST(DimensionAndRanks, DoubleSumMatchesPartitionSizes) {
  Rng rng(43);
  for (int t = 0; t < 100; ++t) {
    const int n = static_cast<int>(uniform(rng, 2, 5));
    const auto p = random_problem<Rational>(rng, kQ, n, 0, 3);
    const IndexChains c = build_chains(p);
    const auto s = dimension_and_ranks(p, c);
    Index parts = 0, formula = 0;
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        parts += c.row_part(i).size() * c.col_part(j).size();
        formula += (s.alphas[static_cast<std::size_t>(i)] - s.alphas[static_cast<std::size_t>(i - 1)]) *
                   (s.betas[static_cast<std::size_t>(j - 1)] - s.betas[static_cast<std::size_t>(j)]);
      }
    EXPECT_EQ(s.dimension, parts);
    EXPECT_EQ(s.dimension, formula);
    Index rows = 0, cols = 0;
    for (int i = 1; i <= n; ++i) {
      rows += c.row_part(i).size();
      cols += c.col_part(i).size();
    }
    EXPECT_EQ(rows, p.x_rows());
    EXPECT_EQ(cols, p.x_cols());
    for (int k = 1; k <= n; ++k) EXPECT_EQ(s.block_opt_ranks[static_cast<std::size_t>(k - 1)], r_opt(p.hankel_problem(k)));
  }
}

TEST(CompleteOverlap, ZeroProblem) {
  const auto p = zero_problem<Rational>(kQ, {1, 2, 2}, {2, 1, 1});
  const auto c = build_chains(p);
  EXPECT_EQ(complete_overlap(p, c, FreeChoiceOverlap<Rational>{}), zeros<Rational>(kQ, 2, 2));
  EXPECT_EQ(complete_overlap(p, c, FreeChoiceOverlap<Rational>::zero(c)), zeros<Rational>(kQ, 2, 2));
}

TEST(CompleteOverlap, DiagonalOnesFreeScalar) {
  const auto p = diagonal_ones<Residue>(kGF2);
  const auto c = build_chains(p);
  for (long t : {0L, 1L}) {
    FreeChoiceOverlap<Residue> f;
    f.blocks[{1, 2}] = from_ints<Residue>(kGF2, {{t}});
    const auto x = complete_overlap(p, c, f);
    EXPECT_EQ(x, from_ints<Residue>(kGF2, {{t}}));
    EXPECT_EQ(hankel_ranks(p, x), (std::vector<Index>{1, 1}));
  }
}

TEST(CompleteOverlap, RejectsBadFreeBlocks) {
  const auto p = diagonal_ones<Residue>(kGF2);
  const auto c = build_chains(p);
  FreeChoiceOverlap<Residue> f;
  f.blocks[{2, 1}] = from_ints<Residue>(kGF2, {{1}});
  EXPECT_THROW(complete_overlap(p, c, f), UsageError);
  FreeChoiceOverlap<Residue> g;
  g.blocks[{1, 2}] = from_ints<Residue>(kGF2, {{1, 1}});
  EXPECT_THROW(complete_overlap(p, c, g), UsageError);
}

TEST(CompleteOverlap, ReachesTheBruteForceMinimaOverGF2) {
  Rng rng(44);
  for (int t = 0; t < 40; ++t) {
    const auto p = random_problem_bounded_x<Residue>(rng, kGF2, 3, 2, 4);
    const auto s = analyze_overlap(p);
    const auto minima = brute_min_ranks(p);
    EXPECT_EQ(s.block_opt_ranks, minima);
    EXPECT_EQ(hankel_ranks(p, s.base_solution), minima);
    const auto x = complete_overlap(p, s.chains, random_free_overlap<Residue>(rng, kGF2, s.chains));
    EXPECT_EQ(hankel_ranks(p, x), minima);
  }
}

TEST(CompleteOverlap, SimultaneousOptimaOverQ) {
  Rng rng(45);
  for (int t = 0; t < 100; ++t) {
    const int n = static_cast<int>(uniform(rng, 2, 5));
    const auto p = random_problem<Rational>(rng, kQ, n, 0, 3);
    const auto s = analyze_overlap(p);
    for (int k = 0; k < 3; ++k) {
      const auto x = complete_overlap(p, s.chains, random_free_overlap<Rational>(rng, kQ, s.chains));
      EXPECT_EQ(hankel_ranks(p, x), s.block_opt_ranks);
    }
  }
}

TEST(CompleteOverlap, AffineInTheFreeChoice) {
  Rng rng(46);
  for (int t = 0; t < 60; ++t) {
    const auto p = random_problem<Rational>(rng, kQ, static_cast<int>(uniform(rng, 2, 4)), 1, 3);
    const auto c = build_chains(p);
    const auto f1 = random_free_overlap<Rational>(rng, kQ, c), f2 = random_free_overlap<Rational>(rng, kQ, c);
    FreeChoiceOverlap<Rational> sum = f1;
    for (auto& [key, m] : sum.blocks) m += f2.blocks.at(key);
    const auto zero = complete_overlap(p, c, FreeChoiceOverlap<Rational>::zero(c));
    EXPECT_EQ(complete_overlap(p, c, f1) + complete_overlap(p, c, f2) - zero, complete_overlap(p, c, sum));
  }
}

TEST(CompleteOverlap, FillOrderIndependent) {
  Rng rng(47);
  for (int t = 0; t < 100; ++t) {
    const FieldSpec f = t % 2 ? kGF2 : kGF3;
    const auto p = random_problem<Residue>(rng, f, static_cast<int>(uniform(rng, 2, 5)), 0, 3);
    const auto c = build_chains(p);
    const auto free = random_free_overlap<Residue>(rng, f, c);
    EXPECT_EQ(complete_overlap_by_columns(p, c, free), complete_overlap(p, c, free));
  }
}

TEST(CompleteOverlap, InductiveRowContainment) {
  // After completion, the rows of the last block row of Hankel block i+1 that
  // lie outside K_i are spanned by the K_i rows together with the A rows above.
  Rng rng(48);
  for (int t = 0; t < 100; ++t) {
    const FieldSpec f = t % 2 ? kGF2 : kGF3;
    const int n = static_cast<int>(uniform(rng, 2, 5));
    const auto p = random_problem<Residue>(rng, f, n, 0, 3);
    const auto c = build_chains(p);
    const auto x = complete_overlap(p, c, random_free_overlap<Residue>(rng, f, c));
    for (int i = 1; i <= n - 1; ++i) {
      const IndexSet& in = c.big_k(i);
      const IndexSet out = in.complement();
      const Matrix<Residue> last = hstack<Residue>({x, p.band(n, n, 2, i + 1)});
      const Matrix<Residue> upper = p.band(i + 1, n - 1, 1, i + 1);
      EXPECT_TRUE(row_space_contained<Residue>(select_rows(last, out), vstack<Residue>({upper, select_rows(last, in)})))
          << "instance " << t << " i=" << i;
    }
  }
}

TEST(HankelRanks, Examples) {
  const auto z = zero_problem<Rational>(kQ, {1, 1, 1}, {1, 1, 1});
  EXPECT_EQ(hankel_ranks(z, zeros<Rational>(kQ, 1, 1)), (std::vector<Index>{0, 0, 0}));
  EXPECT_EQ(hankel_ranks(z, from_ints<Rational>(kQ, {{1}})), (std::vector<Index>{1, 1, 1}));
  const auto d = diagonal_ones<Rational>(kQ);
  EXPECT_EQ(hankel_ranks(d, from_ints<Rational>(kQ, {{0}})), (std::vector<Index>{1, 1}));
  EXPECT_THROW(hankel_ranks(d, zeros<Rational>(kQ, 2, 1)), UsageError);
}

TEST(UniquenessShortcut, Examples) {
  EXPECT_FALSE(uniqueness_shortcut(diagonal_ones<Residue>(kGF2), 1).has_value());
  const auto z = zero_problem<Rational>(kQ, {1, 2}, {2, 1});
  const auto x = uniqueness_shortcut(z, 1);
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(*x, zeros<Rational>(kQ, 2, 2));
}

TEST(UniquenessShortcut, UniqueBlockSolvesEverything) {
  Rng rng(49);
  int hits = 0;
  for (int t = 0; t < 200; ++t) {
    const auto p = random_problem<Residue>(rng, kGF2, static_cast<int>(uniform(rng, 2, 4)), 1, 2);
    const auto s = analyze_overlap(p);
    for (int k = 1; k <= p.n(); ++k) {
      const auto x = uniqueness_shortcut(p, k);
      if (!x) continue;
      ++hits;
      EXPECT_EQ(hankel_ranks(p, *x), s.block_opt_ranks);
      EXPECT_EQ(s.dimension, 0);
      EXPECT_EQ(*x, s.base_solution);
    }
  }
  EXPECT_GT(hits, 0);
}
