#include "undersolve/rref.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace undersolve {

RrefResult rref(const DenseMatrix& a, double tolerance) {
  if (!(tolerance >= 0.0)) throw SolverError(ErrorKind::InvalidConfig, "rref tolerance must be non-negative");

  DenseMatrix w = a;
  const std::size_t rows = w.rows();
  const std::size_t cols = w.cols();
  const double snap = tolerance * matrix_norm(a, NormKind::Infinity);

  RrefResult result;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t best = r;
    double best_abs = 0.0;
    for (std::size_t i = r; i < rows; ++i) {
      const double v = std::abs(w(i, c));
      if (v <= snap) {
        w(i, c) = 0.0;
      } else if (v > best_abs) {
        best = i;
        best_abs = v;
      }
    }
    if (best_abs == 0.0) continue;

    if (best != r) {
      auto upper = w.row(r);
      auto lower = w.row(best);
      std::swap_ranges(upper.begin(), upper.end(), lower.begin());
    }
    const double pivot = w(r, c);
    for (std::size_t j = 0; j < cols; ++j) w(r, j) /= pivot;
    w(r, c) = 1.0;

    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const double factor = w(i, c);
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j < cols; ++j) w(i, j) -= factor * w(r, j);
      w(i, c) = 0.0;
    }
    result.pivot_columns.push_back(c);
    ++r;
  }

  // Scaling by a negative pivot leaves -0.0 in earlier pivot columns.
  for (std::size_t k = 0; k < result.pivot_columns.size(); ++k) {
    for (std::size_t i = 0; i < rows; ++i) w(i, result.pivot_columns[k]) = i == k ? 1.0 : 0.0;
  }

  result.rank = r;
  result.consistent = result.pivot_columns.empty() || result.pivot_columns.back() + 1 != cols;
  result.matrix = std::move(w);
  return result;
}

DenseMatrix augment(const DenseMatrix& a, const Vector& b) {
  if (a.rows() != b.size()) {
    throw SolverError(ErrorKind::DimensionMismatch,
                      "matrix has " + std::to_string(a.rows()) + " rows but right-hand side has " +
                          std::to_string(b.size()) + " entries");
  }
  DenseMatrix out(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    out(i, a.cols()) = b[i];
  }
  return out;
}

ReducedSystem reduce_system(const DenseMatrix& a, const Vector& b, double tolerance) {
  RrefResult reduced = rref(augment(a, b), tolerance);
  if (!reduced.consistent) {
    throw SolverError(ErrorKind::Inconsistent, "system is inconsistent: row reduction yields 0 = 1");
  }
  const std::size_t n = a.cols();
  const std::size_t rank = reduced.rank;

  DenseMatrix a_bar(rank, n);
  std::vector<double> b_bar(rank);
  for (std::size_t i = 0; i < rank; ++i) {
    for (std::size_t j = 0; j < n; ++j) a_bar(i, j) = reduced.matrix(i, j);
    b_bar[i] = reduced.matrix(i, n);
  }

  ColumnPermutation perm = reduced.pivot_columns;
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : perm) is_pivot[c] = true;
  for (std::size_t c = 0; c < n; ++c) {
    if (!is_pivot[c]) perm.push_back(c);
  }

  return ReducedSystem{
      .a = std::move(a_bar),
      .b = Vector(std::move(b_bar)),
      .augmented_rref = std::move(reduced),
      .column_perm = std::move(perm),
      .original_rows = a.rows(),
  };
}

SolveReport exact_solve(const DenseMatrix& a, const Vector& b, const Vector& x0, const SolverConfig& config,
                        double tolerance) {
  try {
    config.validate();
    if (!is_generalized(config.method)) {
      throw SolverError(ErrorKind::InvalidConfig, "exact solve needs gjacobi or ggs");
    }
    if (a.rows() >= a.cols()) {
      throw SolverError(ErrorKind::NotUnderdetermined,
                        "method requires m < n (got " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + ")");
    }
    if (x0.size() != a.cols()) {
      throw SolverError(ErrorKind::DimensionMismatch,
                        "initial guess has " + std::to_string(x0.size()) + " entries but matrix has " +
                            std::to_string(a.cols()) + " columns");
    }
    const ReducedSystem reduced = reduce_system(a, b, tolerance);

    SolveReport report;
    if (reduced.rank() == 0) {
      // Zero matrix with zero right-hand side: every vector solves it.
      report.status = SolveStatus::Converged;
      report.message = "system is trivially satisfied";
      report.solution = x0;
      report.residual_norms = {0.0};
      report.config = config;
      report.column_perm = reduced.column_perm;
    } else {
      const PartitionedSystem sys = partition_with(reduced.a, reduced.b, reduced.column_perm);
      report = run_partitioned(sys, reduced.a, reduced.b, x0, config);
    }
    report.system_rows = reduced.rank();
    report.original_residual = vector_norm(residual(a, report.solution, b), config.residual_norm);
    return report;
  } catch (const SolverError& e) {
    SolveReport report;
    report.status = SolveStatus::Error;
    report.error = e.kind();
    report.message = e.what();
    report.config = config;
    report.system_rows = a.rows();
    report.solution = x0;
    if (a.cols() == x0.size() && a.rows() == b.size()) {
      try {
        report.residual_norms = {vector_norm(residual(a, x0, b), config.residual_norm)};
      } catch (const SolverError&) {
      }
    }
    return report;
  }
}

}  // namespace undersolve
