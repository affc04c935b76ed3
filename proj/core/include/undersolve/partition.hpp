#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "undersolve/matrix.hpp"

namespace undersolve {

enum class PermutationPolicy {
  /// Head block is the leading m columns in their original order.
  Identity,
  /// Head columns chosen by elimination with column pivoting, then ordered
  /// so the head block has a nonzero diagonal.
  PivotColumns,
};

/// Column permutation. Entry j is the original column placed at slot j of
/// the permuted system; slots [0, m) form the head block.
using ColumnPermutation = std::vector<std::size_t>;

/// A = [head | tail] after column permutation, with the right-hand side.
struct PartitionedSystem {
  DenseMatrix head;  // m×m
  DenseMatrix tail;  // m×(n-m)
  Vector rhs;        // m
  ColumnPermutation column_perm;

  std::size_t m() const noexcept { return head.rows(); }
  std::size_t n() const noexcept { return head.cols() + tail.cols(); }
};

/// Iterate split conformably with a PartitionedSystem, in permuted order.
struct SplitIterate {
  Vector head;  // m
  Vector tail;  // n-m

  std::size_t size() const noexcept { return head.size() + tail.size(); }
  friend bool operator==(const SplitIterate&, const SplitIterate&) = default;
};

/// Splits (a, b) into head/tail blocks. Requires 1 ≤ m < n.
/// Throws NotUnderdetermined if m ≥ n, and RankDeficient under
/// PivotColumns when no nonsingular m×m column subset exists.
PartitionedSystem partition_system(const DenseMatrix& a, const Vector& b, PermutationPolicy policy);

/// Builds a partition from an explicit permutation (used by the RREF pipeline).
PartitionedSystem partition_with(const DenseMatrix& a, const Vector& b, ColumnPermutation perm);

ColumnPermutation identity_permutation(std::size_t n);
bool is_permutation(std::span<const std::size_t> perm);

/// Full iterate in original column order.
Vector assemble(const SplitIterate& x, std::span<const std::size_t> perm);

/// Inverse of `assemble`: permutes x into slot order and splits at m.
SplitIterate disassemble(const Vector& x, std::span<const std::size_t> perm, std::size_t m);

}  // namespace undersolve
