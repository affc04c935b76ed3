#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "worked_example.hpp"
#include "undersolve/partition.hpp"

namespace undersolve {
namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const SolverError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no SolverError thrown";
  return ErrorKind::IoError;
}

TEST(Partition, IdentityPolicySplitsLeadingColumns) {
  const DenseMatrix a{{1, 2, 3, 4}, {5, 6, 7, 8}};
  const PartitionedSystem sys = partition_system(a, Vector{1, 2}, PermutationPolicy::Identity);
  EXPECT_EQ(sys.head, (DenseMatrix{{1, 2}, {5, 6}}));
  EXPECT_EQ(sys.tail, (DenseMatrix{{3, 4}, {7, 8}}));
  EXPECT_EQ(sys.rhs, (Vector{1, 2}));
  EXPECT_EQ(sys.column_perm, (ColumnPermutation{0, 1, 2, 3}));
  EXPECT_EQ(sys.m(), 2u);
  EXPECT_EQ(sys.n(), 4u);
}

TEST(Partition, WorkedExampleShapes) {
  const PartitionedSystem sys = partition_system(worked_example::a(), worked_example::b(), PermutationPolicy::Identity);
  EXPECT_EQ(sys.head.rows(), 5u);
  EXPECT_EQ(sys.head.cols(), 5u);
  EXPECT_EQ(sys.tail.cols(), 3u);
  EXPECT_EQ(sys.tail(0, 0), 5.0);
  EXPECT_EQ(sys.tail(4, 2), -8.0);
}

TEST(Partition, RejectsSquareAndTall) {
  EXPECT_EQ(kind_of([] { partition_system(DenseMatrix::identity(3), Vector{1, 1, 1}, PermutationPolicy::Identity); }),
            ErrorKind::NotUnderdetermined);
  EXPECT_EQ(kind_of([] { partition_system(DenseMatrix(4, 2), Vector(std::vector<double>(4)), PermutationPolicy::Identity); }),
            ErrorKind::NotUnderdetermined);
  EXPECT_EQ(kind_of([] { partition_system(DenseMatrix(2, 3), Vector{1}, PermutationPolicy::Identity); }),
            ErrorKind::DimensionMismatch);
}

TEST(Partition, MessageNamesShape) {
  try {
    partition_system(DenseMatrix(3, 3), Vector{0, 0, 0}, PermutationPolicy::Identity);
    FAIL();
  } catch (const SolverError& e) {
    EXPECT_NE(std::string(e.what()).find("method requires m < n"), std::string::npos);
  }
}

TEST(Partition, PivotColumnsAvoidsZeroLeadingBlock) {
  const DenseMatrix a{{0, 0, 1, 2}, {0, 0, 3, 1}};
  const PartitionedSystem sys = partition_system(a, Vector{1, 1}, PermutationPolicy::PivotColumns);
  EXPECT_NE(oracle::determinant(oracle::to_mat(sys.head)), 0.0);
  for (std::size_t i = 0; i < sys.m(); ++i) EXPECT_NE(sys.head(i, i), 0.0);
  EXPECT_TRUE(is_permutation(sys.column_perm));
}

TEST(Partition, PivotColumnsRankDeficient) {
  const DenseMatrix a{{1, 2, 3}, {2, 4, 6}};
  EXPECT_EQ(kind_of([&] { partition_system(a, Vector{1, 2}, PermutationPolicy::PivotColumns); }),
            ErrorKind::RankDeficient);
}

TEST(Partition, PivotColumnsGivesNonsingularHeadOnRandomInputs) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 2 + trial % 5;
    const std::size_t n = m + 1 + trial % 4;
    auto mat = oracle::random_int_mat(rng, m, n, -2, 2);
    // Zero the leading block sometimes.
    if (trial % 3 == 0)
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) mat[i][j] = 0;
    const DenseMatrix a = oracle::from_mat(mat);
    const Vector b(std::vector<double>(m, 1.0));
    try {
      const PartitionedSystem sys = partition_system(a, b, PermutationPolicy::PivotColumns);
      EXPECT_TRUE(is_permutation(sys.column_perm));
      EXPECT_GT(std::abs(oracle::determinant(oracle::to_mat(sys.head))), 1e-9);
      for (std::size_t i = 0; i < m; ++i) EXPECT_NE(sys.head(i, i), 0.0);
      for (std::size_t slot = 0; slot < n; ++slot) {
        const std::size_t col = sys.column_perm[slot];
        for (std::size_t i = 0; i < m; ++i) {
          const double v = slot < m ? sys.head(i, slot) : sys.tail(i, slot - m);
          EXPECT_EQ(v, a(i, col));
        }
      }
    } catch (const SolverError& e) {
      EXPECT_EQ(e.kind(), ErrorKind::RankDeficient);
      // Brute force: no m-subset of columns is nonsingular.
      std::vector<int> pick(n, 0);
      std::fill(pick.begin(), pick.begin() + static_cast<long>(m), 1);
      std::sort(pick.begin(), pick.end());
      do {
        oracle::Mat sub(m);
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < n; ++j)
            if (pick[j]) sub[i].push_back(mat[i][j]);
        EXPECT_LT(std::abs(oracle::determinant(sub)), 1e-9);
      } while (std::next_permutation(pick.begin(), pick.end()));
    }
  }
}

TEST(Partition, AssembleDisassembleRoundTrip) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 9;
    const std::size_t m = 1 + trial % (n - 1);
    ColumnPermutation perm = identity_permutation(n);
    std::shuffle(perm.begin(), perm.end(), rng);
    const Vector x(oracle::random_vec(rng, n));
    const SplitIterate split = disassemble(x, perm, m);
    EXPECT_EQ(split.head.size(), m);
    EXPECT_EQ(split.tail.size(), n - m);
    for (std::size_t slot = 0; slot < n; ++slot) {
      EXPECT_EQ(slot < m ? split.head[slot] : split.tail[slot - m], x[perm[slot]]);
    }
    EXPECT_EQ(assemble(split, perm), x);
  }
}

TEST(Partition, PermutationValidation) {
  EXPECT_TRUE(is_permutation(identity_permutation(4)));
  EXPECT_FALSE(is_permutation(ColumnPermutation{0, 0, 1}));
  EXPECT_FALSE(is_permutation(ColumnPermutation{0, 3, 1}));
  EXPECT_THROW(partition_with(DenseMatrix(1, 3), Vector{0}, ColumnPermutation{0, 1, 1}), SolverError);
  EXPECT_THROW(assemble(SplitIterate{Vector{1}, Vector{2}}, ColumnPermutation{0, 2}), SolverError);
}

TEST(Partition, ExplicitPermutation) {
  const DenseMatrix a{{1, 2, 3}, {4, 5, 6}};
  const PartitionedSystem sys = partition_with(a, Vector{7, 8}, ColumnPermutation{2, 0, 1});
  EXPECT_EQ(sys.head, (DenseMatrix{{3, 1}, {6, 4}}));
  EXPECT_EQ(sys.tail, (DenseMatrix{{2}, {5}}));
}

}  // namespace
}  // namespace undersolve
