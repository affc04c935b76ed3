#pragma once

#include <optional>
#include <vector>

#include "undersolve/matrix.hpp"
#include "undersolve/partition.hpp"

namespace undersolve {

/// Square-block splitting used in the head update.
enum class Splitting { Jacobi, GaussSeidel };

/// Sufficient-condition values measured in one matrix norm.
///
/// `c1` is ‖I − B·D⁻¹‖ (Jacobi) or ‖I − B·L⁻¹‖ (Gauss-Seidel); `c2` is
/// ‖mI − B̃·s(B̃)·N(B̃)⁻¹‖. The pair certifies convergence when c1 < 1 and
/// c2 < m, in which case the residual contracts by at most c1·c2/m per step
/// in the matching vector norm.
struct NormCondition {
  NormKind norm = NormKind::One;
  double c1 = 0.0;
  double c2 = 0.0;
  /// ‖I − (1/m)·B̃·s(B̃)·N(B̃)⁻¹‖ evaluated directly; equals c2/m up to rounding.
  double c2_normalized = 0.0;
  /// Step-size bound ‖K⁻¹(I − (1/m)B̃ s(B̃) N⁻¹)‖ + (1/m)‖s(B̃) N⁻¹‖ with K = D or L.
  /// Informational only.
  double cauchy_bound = 0.0;
  bool certified = false;
};

struct ConditionReport {
  Splitting splitting = Splitting::Jacobi;
  std::size_t m = 0;
  std::vector<NormCondition> per_norm;  // One, Infinity, Frobenius
  bool overall_certified = false;

  /// Record measured in `which`, or null.
  const NormCondition* find(NormKind which) const;
};

/// B̃·s(B̃)·N(B̃)⁻¹ (m×m). Throws ZeroTailRow if a tail row is zero.
DenseMatrix tail_coupling(const PartitionedSystem& sys);

/// I − B·D⁻¹ or I − B·L⁻¹. B·L⁻¹ is formed row-wise by back substitution
/// against Lᵀ. Throws ZeroDiagonal / SingularTriangular.
DenseMatrix head_error_operator(const PartitionedSystem& sys, Splitting splitting);

ConditionReport check_conditions(const PartitionedSystem& sys, Splitting splitting);

/// min over certified norms of c1·c2/m; empty when nothing certifies.
std::optional<double> contraction_factor(const ConditionReport& report, std::size_t m);

}  // namespace undersolve
