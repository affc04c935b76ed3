#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "undersolve/convergence.hpp"
#include "undersolve/error.hpp"
#include "undersolve/matrix.hpp"
#include "undersolve/partition.hpp"

namespace undersolve {

enum class Method {
  Baseline,
  GeneralizedJacobi,
  GeneralizedGaussSeidel,
  ClassicalJacobi,
  ClassicalGaussSeidel,
};

/// Short names used on the command line and in reports:
/// baseline, gjacobi, ggs, jacobi, gs.
std::string_view to_string(Method method) noexcept;
std::optional<Method> method_from_string(std::string_view name) noexcept;

bool is_generalized(Method method) noexcept;
bool is_classical(Method method) noexcept;

std::string_view to_string(NormKind norm) noexcept;
std::optional<NormKind> norm_from_string(std::string_view name) noexcept;
std::string_view to_string(PermutationPolicy policy) noexcept;
std::optional<PermutationPolicy> policy_from_string(std::string_view name) noexcept;

struct SolverConfig {
  Method method = Method::GeneralizedJacobi;
  double epsilon = 1e-8;
  std::size_t max_iterations = 10000;
  NormKind residual_norm = NormKind::One;  // One or Infinity
  PermutationPolicy permutation_policy = PermutationPolicy::Identity;
  std::size_t stagnation_window = 10;

  /// Throws InvalidConfig when a field is out of range.
  void validate() const;

  friend bool operator==(const SolverConfig&, const SolverConfig&) = default;
};

enum class SolveStatus { Converged, MaxIterations, Stagnated, Diverged, Error };

std::string_view to_string(SolveStatus status) noexcept;
std::optional<SolveStatus> status_from_string(std::string_view name) noexcept;

struct SolveReport {
  SolveStatus status = SolveStatus::Error;
  std::optional<ErrorKind> error;  // set iff status == Error
  std::string message;
  Vector solution;  // original column order
  std::size_t iterations = 0;
  /// ‖A x⁽ᵏ⁾ − b‖ for k = 0..iterations in the configured norm, measured on
  /// the system that was iterated.
  std::vector<double> residual_norms;
  SolverConfig config;
  ColumnPermutation column_perm;
  /// Rows of the iterated system (differs from the input when RREF drops rows).
  std::size_t system_rows = 0;
  /// Residual against the caller's original (A, b) when a reduced system was iterated.
  std::optional<double> original_residual;
  std::optional<ConditionReport> conditions;

  double final_residual() const { return residual_norms.empty() ? 0.0 : residual_norms.back(); }
};

// Single steps. All are pure.

/// z + s(A)·d with d_i = (b_i − A_i·z) / (m·‖A_i‖₁). Throws ZeroRow.
Vector baseline_step(const DenseMatrix& a, const Vector& b, const Vector& z);

/// Step-1 weights d_i = (b̃_i − B̃_i·x₂) / (m·‖B̃_i‖₁), b̃ = b − B·x₁. Throws ZeroTailRow.
Vector tail_weights(const PartitionedSystem& sys, const SplitIterate& x);

/// Tail update followed by a Jacobi head update against b̂ = b − B̃·x₂'.
SplitIterate generalized_jacobi_step(const PartitionedSystem& sys, const SplitIterate& x);

/// Tail update followed by a Gauss-Seidel head update against b̂ = b − B̃·x₂'.
SplitIterate generalized_gauss_seidel_step(const PartitionedSystem& sys, const SplitIterate& x);

/// D⁻¹(−(B − D)x + rhs). Throws ZeroDiagonal.
Vector classical_jacobi_step(const DenseMatrix& b_mat, const Vector& rhs, const Vector& x);

/// Solves L·x' = −(B − L)x + rhs. Throws SingularTriangular.
Vector classical_gauss_seidel_step(const DenseMatrix& b_mat, const Vector& rhs, const Vector& x);

// Driver.

/// Iterates `config.method` from x0 until the residual norm drops below
/// epsilon or a guard fires. Never throws SolverError; failures are
/// reported through `status == Error`.
SolveReport run(const DenseMatrix& a, const Vector& b, const Vector& x0, const SolverConfig& config);

/// Same as `run` with a zero initial guess.
SolveReport run(const DenseMatrix& a, const Vector& b, const SolverConfig& config);

/// Generalized iteration on an already partitioned system. `a` and `b` must be
/// the unpermuted system `sys` was built from.
SolveReport run_partitioned(const PartitionedSystem& sys, const DenseMatrix& a, const Vector& b,
                            const Vector& x0, const SolverConfig& config);

}  // namespace undersolve
