#include "undersolve/partition.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace undersolve {

namespace {

void require_underdetermined(const DenseMatrix& a, const Vector& b) {
  if (a.rows() != b.size()) {
    throw SolverError(ErrorKind::DimensionMismatch,
                      "matrix has " + std::to_string(a.rows()) + " rows but right-hand side has " +
                          std::to_string(b.size()) + " entries");
  }
  if (a.rows() == 0 || a.rows() >= a.cols()) {
    throw SolverError(ErrorKind::NotUnderdetermined,
                      "method requires m < n (got " + std::to_string(a.rows()) + "x" +
                          std::to_string(a.cols()) + ")");
  }
}

// Gaussian elimination with column pivoting; returns the pivot column of each row.
std::vector<std::size_t> pivot_columns(const DenseMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  const double tiny = singularity_threshold(a);
  DenseMatrix work = a;
  std::vector<bool> used(n, false);
  std::vector<std::size_t> chosen;
  chosen.reserve(m);

  for (std::size_t r = 0; r < m; ++r) {
    std::size_t best = n;
    double best_abs = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
      if (!used[c] && std::abs(work(r, c)) > best_abs) {
        best = c;
        best_abs = std::abs(work(r, c));
      }
    }
    if (best == n || best_abs <= tiny) {
      throw SolverError(ErrorKind::RankDeficient,
                        "no nonsingular head block: row " + std::to_string(r) +
                            " is dependent on the rows above it");
    }
    used[best] = true;
    chosen.push_back(best);
    for (std::size_t i = r + 1; i < m; ++i) {
      const double factor = work(i, best) / work(r, best);
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) work(i, j) -= factor * work(r, j);
    }
  }
  return chosen;
}

// Assigns each row a distinct column from `columns` with a(row, column) above
// `floor`, preferring large magnitudes. Returns an empty vector if impossible.
std::vector<std::size_t> match_diagonal(const DenseMatrix& a, const std::vector<std::size_t>& columns,
                                        double floor) {
  const std::size_t m = a.rows();
  std::vector<std::vector<std::size_t>> candidates(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < columns.size(); ++k) {
      if (std::abs(a(i, columns[k])) > floor) candidates[i].push_back(k);
    }
    std::stable_sort(candidates[i].begin(), candidates[i].end(), [&](std::size_t x, std::size_t y) {
      return std::abs(a(i, columns[x])) > std::abs(a(i, columns[y]));
    });
  }

  constexpr std::size_t kFree = static_cast<std::size_t>(-1);
  std::vector<std::size_t> owner(columns.size(), kFree);  // column slot -> row
  std::vector<bool> visited;
  std::function<bool(std::size_t)> augment = [&](std::size_t row) {
    for (std::size_t k : candidates[row]) {
      if (visited[k]) continue;
      visited[k] = true;
      if (owner[k] == kFree || augment(owner[k])) {
        owner[k] = row;
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < m; ++i) {
    visited.assign(columns.size(), false);
    if (!augment(i)) return {};
  }

  std::vector<std::size_t> row_to_column(m);
  for (std::size_t k = 0; k < columns.size(); ++k) row_to_column[owner[k]] = columns[k];
  return row_to_column;
}

}  // namespace

ColumnPermutation identity_permutation(std::size_t n) {
  ColumnPermutation perm(n);
  for (std::size_t j = 0; j < n; ++j) perm[j] = j;
  return perm;
}

bool is_permutation(std::span<const std::size_t> perm) {
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t p : perm) {
    if (p >= perm.size() || seen[p]) return false;
    seen[p] = true;
  }
  return true;
}

PartitionedSystem partition_with(const DenseMatrix& a, const Vector& b, ColumnPermutation perm) {
  require_underdetermined(a, b);
  if (perm.size() != a.cols() || !is_permutation(perm)) {
    throw SolverError(ErrorKind::DimensionMismatch,
                      "column permutation is not a permutation of " + std::to_string(a.cols()) + " columns");
  }
  const std::size_t m = a.rows();
  const DenseMatrix permuted = select_columns(a, perm);
  return PartitionedSystem{
      .head = column_block(permuted, 0, m),
      .tail = column_block(permuted, m, a.cols() - m),
      .rhs = b,
      .column_perm = std::move(perm),
  };
}

PartitionedSystem partition_system(const DenseMatrix& a, const Vector& b, PermutationPolicy policy) {
  require_underdetermined(a, b);
  if (policy == PermutationPolicy::Identity) return partition_with(a, b, identity_permutation(a.cols()));

  std::vector<std::size_t> chosen = pivot_columns(a);
  std::vector<std::size_t> head = match_diagonal(a, chosen, singularity_threshold(a));
  if (head.empty()) head = match_diagonal(a, chosen, 0.0);
  // A nonsingular block always has a nonzero transversal, so this is unreachable.
  if (head.empty()) head = chosen;

  ColumnPermutation perm = head;
  std::vector<bool> in_head(a.cols(), false);
  for (std::size_t c : head) in_head[c] = true;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    if (!in_head[c]) perm.push_back(c);
  }
  return partition_with(a, b, std::move(perm));
}

Vector assemble(const SplitIterate& x, std::span<const std::size_t> perm) {
  if (x.size() != perm.size() || !is_permutation(perm)) {
    throw SolverError(ErrorKind::DimensionMismatch,
                      "split iterate of length " + std::to_string(x.size()) + " with permutation of length " +
                          std::to_string(perm.size()));
  }
  std::vector<double> full(perm.size());
  const std::size_t m = x.head.size();
  for (std::size_t slot = 0; slot < perm.size(); ++slot) {
    full[perm[slot]] = slot < m ? x.head[slot] : x.tail[slot - m];
  }
  return Vector(std::move(full));
}

SplitIterate disassemble(const Vector& x, std::span<const std::size_t> perm, std::size_t m) {
  if (x.size() != perm.size() || m > perm.size() || !is_permutation(perm)) {
    throw SolverError(ErrorKind::DimensionMismatch,
                      "vector of length " + std::to_string(x.size()) + " with permutation of length " +
                          std::to_string(perm.size()) + " and head size " + std::to_string(m));
  }
  std::vector<double> head(m);
  std::vector<double> tail(perm.size() - m);
  for (std::size_t slot = 0; slot < perm.size(); ++slot) {
    if (slot < m) {
      head[slot] = x[perm[slot]];
    } else {
      tail[slot - m] = x[perm[slot]];
    }
  }
  return SplitIterate{Vector(std::move(head)), Vector(std::move(tail))};
}

}  // namespace undersolve
