#include "undersolve/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace undersolve {

namespace {

constexpr NormKind kNorms[] = {NormKind::One, NormKind::Infinity, NormKind::Frobenius};

Vector checked_tail_norms(const PartitionedSystem& sys) {
  Vector norms = row_one_norms(sys.tail);
  for (std::size_t i = 0; i < norms.size(); ++i) {
    if (norms[i] == 0.0) {
      throw SolverError(ErrorKind::ZeroTailRow, "tail block row " + std::to_string(i) + " is zero");
    }
  }
  return norms;
}

// s(B̃)·N(B̃)⁻¹, the (n−m)×m map from residuals to tail corrections (before 1/m).
DenseMatrix scaled_signs(const DenseMatrix& tail, const Vector& norms) {
  DenseMatrix s = sign_matrix(tail);
  for (std::size_t r = 0; r < s.rows(); ++r) {
    for (std::size_t i = 0; i < s.cols(); ++i) s(r, i) /= norms[i];
  }
  return s;
}

Vector checked_diagonal(const DenseMatrix& head) {
  const double tiny = singularity_threshold(head);
  Vector d = diagonal(head);
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (std::abs(d[i]) <= tiny) {
      throw SolverError(ErrorKind::ZeroDiagonal, "head block diagonal entry " + std::to_string(i) + " is zero");
    }
  }
  return d;
}

// K⁻¹·X for K = D or K = L, column by column.
DenseMatrix apply_head_inverse(const DenseMatrix& head, Splitting splitting, const DenseMatrix& x) {
  DenseMatrix out(x.rows(), x.cols());
  if (splitting == Splitting::Jacobi) {
    const Vector d = checked_diagonal(head);
    for (std::size_t i = 0; i < x.rows(); ++i) {
      for (std::size_t j = 0; j < x.cols(); ++j) out(i, j) = x(i, j) / d[i];
    }
    return out;
  }
  const DenseMatrix l = lower_triangle(head);
  for (std::size_t j = 0; j < x.cols(); ++j) {
    std::vector<double> column(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i) column[i] = x(i, j);
    const Vector y = forward_substitution(l, Vector(std::move(column)));
    for (std::size_t i = 0; i < x.rows(); ++i) out(i, j) = y[i];
  }
  return out;
}

}  // namespace

const NormCondition* ConditionReport::find(NormKind which) const {
  for (const auto& record : per_norm) {
    if (record.norm == which) return &record;
  }
  return nullptr;
}

DenseMatrix tail_coupling(const PartitionedSystem& sys) {
  const Vector norms = checked_tail_norms(sys);
  return multiply(sys.tail, scaled_signs(sys.tail, norms));
}

DenseMatrix head_error_operator(const PartitionedSystem& sys, Splitting splitting) {
  const DenseMatrix& head = sys.head;
  const std::size_t m = head.rows();
  DenseMatrix e(m, m);
  if (splitting == Splitting::Jacobi) {
    const Vector d = checked_diagonal(head);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) e(i, j) = (i == j ? 1.0 : 0.0) - head(i, j) / d[j];
    }
    return e;
  }

  // Row i of B·L⁻¹ solves Lᵀ·xᵀ = B_iᵀ.
  const DenseMatrix lt = transpose(lower_triangle(head));
  for (std::size_t i = 0; i < m; ++i) {
    const auto row = head.row(i);
    const Vector xi = backward_substitution(lt, Vector(std::vector<double>(row.begin(), row.end())));
    for (std::size_t j = 0; j < m; ++j) e(i, j) = (i == j ? 1.0 : 0.0) - xi[j];
  }
  return e;
}

ConditionReport check_conditions(const PartitionedSystem& sys, Splitting splitting) {
  const std::size_t m = sys.m();
  const double md = static_cast<double>(m);
  const Vector norms = checked_tail_norms(sys);
  const DenseMatrix signs_over_norms = scaled_signs(sys.tail, norms);
  const DenseMatrix coupling = multiply(sys.tail, signs_over_norms);
  const DenseMatrix head_error = head_error_operator(sys, splitting);

  DenseMatrix shifted(m, m);     // mI − M
  DenseMatrix projector(m, m);   // I − M/m
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double eye = i == j ? 1.0 : 0.0;
      shifted(i, j) = md * eye - coupling(i, j);
      projector(i, j) = eye - coupling(i, j) / md;
    }
  }
  const DenseMatrix head_step = apply_head_inverse(sys.head, splitting, projector);

  ConditionReport report;
  report.splitting = splitting;
  report.m = m;
  for (NormKind which : kNorms) {
    NormCondition record;
    record.norm = which;
    record.c1 = matrix_norm(head_error, which);
    record.c2 = matrix_norm(shifted, which);
    record.c2_normalized = matrix_norm(projector, which);
    record.cauchy_bound = matrix_norm(head_step, which) + matrix_norm(signs_over_norms, which) / md;
    record.certified = record.c1 < 1.0 && record.c2 < md;
    report.overall_certified = report.overall_certified || record.certified;
    report.per_norm.push_back(record);
  }
  return report;
}

std::optional<double> contraction_factor(const ConditionReport& report, std::size_t m) {
  std::optional<double> best;
  for (const auto& record : report.per_norm) {
    if (!record.certified) continue;
    const double factor = record.c1 * record.c2 / static_cast<double>(m);
    if (!best || factor < *best) best = factor;
  }
  return best;
}

}  // namespace undersolve
