#pragma once

#include <cstddef>
#include <vector>

#include "undersolve/iterate.hpp"
#include "undersolve/matrix.hpp"
#include "undersolve/partition.hpp"

namespace undersolve {

inline constexpr double kDefaultRrefTolerance = 1e-10;

struct RrefResult {
  DenseMatrix matrix;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_columns;  // strictly increasing
  /// Meaningful for augmented inputs only: no pivot in the last column.
  bool consistent = true;
};

/// Gauss-Jordan elimination with partial (row) pivoting.
///
/// During the pivot search, entries at or below `tolerance` times the ∞-norm
/// of the input are set to exactly zero. Pivots are scaled to exactly 1 and
/// every other entry of a pivot column is assigned exactly 0, so rows past
/// `rank` come out identically zero.
RrefResult rref(const DenseMatrix& a, double tolerance = kDefaultRrefTolerance);

/// [A | b].
DenseMatrix augment(const DenseMatrix& a, const Vector& b);

/// Row-reduced form of a consistent system with zero rows dropped.
///
/// `column_perm` lists the pivot columns first, so partitioning with it gives
/// a head block equal to the identity.
struct ReducedSystem {
  DenseMatrix a;  // rank×n
  Vector b;       // rank
  RrefResult augmented_rref;
  ColumnPermutation column_perm;
  std::size_t original_rows = 0;

  std::size_t rank() const noexcept { return a.rows(); }
};

/// Throws Inconsistent when the augmented column holds a pivot.
ReducedSystem reduce_system(const DenseMatrix& a, const Vector& b, double tolerance = kDefaultRrefTolerance);

/// Row-reduces [A | b] and runs the configured generalized method on the
/// reduced system, where every iterate is an exact solution. Residual
/// history is measured against the reduced system; `original_residual`
/// against (A, b). Never throws SolverError.
SolveReport exact_solve(const DenseMatrix& a, const Vector& b, const Vector& x0, const SolverConfig& config,
                        double tolerance = kDefaultRrefTolerance);

}  // namespace undersolve
