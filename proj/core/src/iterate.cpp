#include "undersolve/iterate.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <utility>

namespace undersolve {

namespace {

constexpr double kDivergenceFactor = 1e12;
constexpr double kStagnationTolerance = 1e-14;

template <typename Enum, std::size_t N>
std::string_view lookup_name(const std::array<std::pair<Enum, std::string_view>, N>& table, Enum value) {
  for (const auto& [v, name] : table) {
    if (v == value) return name;
  }
  return "unknown";
}

template <typename Enum, std::size_t N>
std::optional<Enum> lookup_value(const std::array<std::pair<Enum, std::string_view>, N>& table,
                                 std::string_view name) {
  for (const auto& [v, n] : table) {
    if (n == name) return v;
  }
  return std::nullopt;
}

constexpr std::array<std::pair<Method, std::string_view>, 5> kMethodNames{{
    {Method::Baseline, "baseline"},
    {Method::GeneralizedJacobi, "gjacobi"},
    {Method::GeneralizedGaussSeidel, "ggs"},
    {Method::ClassicalJacobi, "jacobi"},
    {Method::ClassicalGaussSeidel, "gs"},
}};

constexpr std::array<std::pair<NormKind, std::string_view>, 3> kNormNames{{
    {NormKind::One, "one"},
    {NormKind::Infinity, "inf"},
    {NormKind::Frobenius, "frobenius"},
}};

constexpr std::array<std::pair<PermutationPolicy, std::string_view>, 2> kPolicyNames{{
    {PermutationPolicy::Identity, "identity"},
    {PermutationPolicy::PivotColumns, "pivot_columns"},
}};

constexpr std::array<std::pair<SolveStatus, std::string_view>, 5> kStatusNames{{
    {SolveStatus::Converged, "converged"},
    {SolveStatus::MaxIterations, "max_iterations"},
    {SolveStatus::Stagnated, "stagnated"},
    {SolveStatus::Diverged, "diverged"},
    {SolveStatus::Error, "error"},
}};

void require_square_system(const DenseMatrix& b_mat, const Vector& rhs, const Vector& x) {
  if (!b_mat.is_square()) {
    throw SolverError(ErrorKind::NotSquare, "method requires a square matrix (got " +
                                                std::to_string(b_mat.rows()) + "x" +
                                                std::to_string(b_mat.cols()) + ")");
  }
  if (rhs.size() != b_mat.rows() || x.size() != b_mat.rows()) {
    throw SolverError(ErrorKind::DimensionMismatch, "square step: right-hand side or iterate has wrong length");
  }
}

// Step 1 shared by both generalized methods: x₂' = x₂ + s(B̃)·d.
Vector updated_tail(const PartitionedSystem& sys, const SplitIterate& x) {
  const Vector d = tail_weights(sys, x);
  std::vector<double> tail(x.tail.raw());
  for (std::size_t i = 0; i < sys.tail.rows(); ++i) {
    const auto row = sys.tail.row(i);
    for (std::size_t l = 0; l < row.size(); ++l) {
      if (row[l] > 0.0) {
        tail[l] += d[i];
      } else if (row[l] < 0.0) {
        tail[l] -= d[i];
      }
    }
  }
  return Vector(std::move(tail));
}

void check_split(const PartitionedSystem& sys, const SplitIterate& x) {
  if (x.head.size() != sys.m() || x.tail.size() != sys.tail.cols() || sys.rhs.size() != sys.m()) {
    throw SolverError(ErrorKind::DimensionMismatch, "split iterate does not conform to the partitioned system");
  }
}

using StepFn = std::function<Vector(const Vector&)>;

// Owns the iterate state for one solve. `report` arrives with config, perm and
// diagnostics filled in.
SolveReport drive(const DenseMatrix& a, const Vector& b, Vector x, const StepFn& step, SolveReport report) {
  const SolverConfig& cfg = report.config;
  const double r0 = vector_norm(residual(a, x, b), cfg.residual_norm);
  report.residual_norms = {r0};
  report.iterations = 0;

  auto finish = [&](SolveStatus status, std::string message = {}) {
    report.status = status;
    report.message = std::move(message);
    report.solution = x;
    return report;
  };

  if (r0 < cfg.epsilon) return finish(SolveStatus::Converged, "initial guess already satisfies the tolerance");

  std::size_t flat = 0;
  for (std::size_t k = 1; k <= cfg.max_iterations; ++k) {
    Vector next;
    double r = 0.0;
    try {
      next = step(x);
      r = vector_norm(residual(a, next, b), cfg.residual_norm);
    } catch (const SolverError& e) {
      if (e.kind() == ErrorKind::NonFinite) {
        return finish(SolveStatus::Diverged, "iterate became non-finite at iteration " + std::to_string(k));
      }
      report.error = e.kind();
      return finish(SolveStatus::Error, e.what());
    }
    if (!std::isfinite(r)) {
      return finish(SolveStatus::Diverged, "residual became non-finite at iteration " + std::to_string(k));
    }

    const double previous = report.residual_norms.back();
    x = std::move(next);
    report.residual_norms.push_back(r);
    report.iterations = k;

    if (r < cfg.epsilon) return finish(SolveStatus::Converged);
    if (r > kDivergenceFactor * r0) {
      return finish(SolveStatus::Diverged, "residual grew beyond 1e12 times its initial value");
    }
    flat = std::abs(r - previous) < kStagnationTolerance * previous ? flat + 1 : 0;
    if (flat >= cfg.stagnation_window) {
      return finish(SolveStatus::Stagnated, "residual unchanged over " + std::to_string(flat) + " iterations");
    }
  }
  return finish(SolveStatus::MaxIterations);
}

SolveReport error_report(const SolverError& e, const DenseMatrix& a, const Vector& b, const Vector& x0,
                         const SolverConfig& config) {
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
      report.residual_norms.clear();
    }
  }
  return report;
}

SolveReport base_report(const DenseMatrix& a, const SolverConfig& config, ColumnPermutation perm) {
  SolveReport report;
  report.config = config;
  report.column_perm = std::move(perm);
  report.system_rows = a.rows();
  return report;
}

}  // namespace

std::string_view to_string(Method method) noexcept { return lookup_name(kMethodNames, method); }
std::optional<Method> method_from_string(std::string_view name) noexcept {
  return lookup_value(kMethodNames, name);
}
std::string_view to_string(NormKind norm) noexcept { return lookup_name(kNormNames, norm); }
std::optional<NormKind> norm_from_string(std::string_view name) noexcept { return lookup_value(kNormNames, name); }
std::string_view to_string(PermutationPolicy policy) noexcept { return lookup_name(kPolicyNames, policy); }
std::optional<PermutationPolicy> policy_from_string(std::string_view name) noexcept {
  return lookup_value(kPolicyNames, name);
}
std::string_view to_string(SolveStatus status) noexcept { return lookup_name(kStatusNames, status); }
std::optional<SolveStatus> status_from_string(std::string_view name) noexcept {
  return lookup_value(kStatusNames, name);
}

bool is_generalized(Method method) noexcept {
  return method == Method::GeneralizedJacobi || method == Method::GeneralizedGaussSeidel;
}

bool is_classical(Method method) noexcept {
  return method == Method::ClassicalJacobi || method == Method::ClassicalGaussSeidel;
}

void SolverConfig::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw SolverError(ErrorKind::InvalidConfig, "epsilon must be a positive finite number");
  }
  if (max_iterations < 1) throw SolverError(ErrorKind::InvalidConfig, "max_iterations must be at least 1");
  if (stagnation_window < 2) throw SolverError(ErrorKind::InvalidConfig, "stagnation_window must be at least 2");
  if (residual_norm == NormKind::Frobenius) {
    throw SolverError(ErrorKind::InvalidConfig, "residual norm must be 'one' or 'inf'");
  }
}

// --- steps -----------------------------------------------------------------

Vector baseline_step(const DenseMatrix& a, const Vector& b, const Vector& z) {
  if (a.rows() != b.size() || a.cols() != z.size()) {
    throw SolverError(ErrorKind::DimensionMismatch, "baseline step: dimensions of A, b and z disagree");
  }
  const Vector norms = row_one_norms(a);
  const double m = static_cast<double>(a.rows());
  const Vector az = multiply(a, z);
  std::vector<double> next(z.raw());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (norms[i] == 0.0) throw SolverError(ErrorKind::ZeroRow, "row " + std::to_string(i) + " of A is zero");
    const double d = (b[i] - az[i]) / (m * norms[i]);
    const auto row = a.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] > 0.0) {
        next[j] += d;
      } else if (row[j] < 0.0) {
        next[j] -= d;
      }
    }
  }
  return Vector(std::move(next));
}

Vector tail_weights(const PartitionedSystem& sys, const SplitIterate& x) {
  check_split(sys, x);
  const Vector norms = row_one_norms(sys.tail);
  const double m = static_cast<double>(sys.m());
  const Vector b_tilde = subtract(sys.rhs, multiply(sys.head, x.head));
  const Vector tail_part = multiply(sys.tail, x.tail);
  std::vector<double> d(sys.m());
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (norms[i] == 0.0) {
      throw SolverError(ErrorKind::ZeroTailRow, "tail block row " + std::to_string(i) + " is zero");
    }
    d[i] = (b_tilde[i] - tail_part[i]) / (m * norms[i]);
  }
  return Vector(std::move(d));
}

SplitIterate generalized_jacobi_step(const PartitionedSystem& sys, const SplitIterate& x) {
  Vector tail = updated_tail(sys, x);
  const Vector b_hat = subtract(sys.rhs, multiply(sys.tail, tail));
  return SplitIterate{classical_jacobi_step(sys.head, b_hat, x.head), std::move(tail)};
}

SplitIterate generalized_gauss_seidel_step(const PartitionedSystem& sys, const SplitIterate& x) {
  Vector tail = updated_tail(sys, x);
  const Vector b_hat = subtract(sys.rhs, multiply(sys.tail, tail));
  return SplitIterate{classical_gauss_seidel_step(sys.head, b_hat, x.head), std::move(tail)};
}

Vector classical_jacobi_step(const DenseMatrix& b_mat, const Vector& rhs, const Vector& x) {
  require_square_system(b_mat, rhs, x);
  const double tiny = singularity_threshold(b_mat);
  const std::size_t m = b_mat.rows();
  std::vector<double> next(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double pivot = b_mat(i, i);
    if (std::abs(pivot) <= tiny) {
      throw SolverError(ErrorKind::ZeroDiagonal, "diagonal entry " + std::to_string(i) + " is zero");
    }
    double sum = rhs[i];
    for (std::size_t j = 0; j < m; ++j) {
      if (j != i) sum -= b_mat(i, j) * x[j];
    }
    next[i] = sum / pivot;
  }
  return Vector(std::move(next));
}

Vector classical_gauss_seidel_step(const DenseMatrix& b_mat, const Vector& rhs, const Vector& x) {
  require_square_system(b_mat, rhs, x);
  const std::size_t m = b_mat.rows();
  std::vector<double> shifted(m);
  for (std::size_t i = 0; i < m; ++i) {
    double sum = rhs[i];
    for (std::size_t j = i + 1; j < m; ++j) sum -= b_mat(i, j) * x[j];
    shifted[i] = sum;
  }
  return forward_substitution(lower_triangle(b_mat), Vector(std::move(shifted)));
}

// --- driver ----------------------------------------------------------------

SolveReport run_partitioned(const PartitionedSystem& sys, const DenseMatrix& a, const Vector& b,
                            const Vector& x0, const SolverConfig& config) {
  try {
    config.validate();
    if (!is_generalized(config.method)) {
      throw SolverError(ErrorKind::InvalidConfig, "partitioned runs need a generalized method");
    }
    if (x0.size() != a.cols() || b.size() != a.rows() || sys.m() != a.rows() || sys.n() != a.cols()) {
      throw SolverError(ErrorKind::DimensionMismatch, "initial guess or system does not match the partition");
    }
    const Splitting splitting =
        config.method == Method::GeneralizedJacobi ? Splitting::Jacobi : Splitting::GaussSeidel;

    SolveReport report = base_report(a, config, sys.column_perm);
    try {
      report.conditions = check_conditions(sys, splitting);
    } catch (const SolverError&) {
      // Preconditions of the checker fail; the first step reports the cause.
    }

    const std::size_t m = sys.m();
    StepFn step = [&](const Vector& x) {
      const SplitIterate split = disassemble(x, sys.column_perm, m);
      return assemble(splitting == Splitting::Jacobi ? generalized_jacobi_step(sys, split)
                                                     : generalized_gauss_seidel_step(sys, split),
                      sys.column_perm);
    };
    return drive(a, b, x0, step, std::move(report));
  } catch (const SolverError& e) {
    SolveReport report = error_report(e, a, b, x0, config);
    report.column_perm = sys.column_perm;
    return report;
  }
}

SolveReport run(const DenseMatrix& a, const Vector& b, const Vector& x0, const SolverConfig& config) {
  try {
    config.validate();
    if (a.rows() != b.size()) {
      throw SolverError(ErrorKind::DimensionMismatch,
                        "matrix has " + std::to_string(a.rows()) + " rows but right-hand side has " +
                            std::to_string(b.size()) + " entries");
    }
    if (a.cols() != x0.size()) {
      throw SolverError(ErrorKind::DimensionMismatch,
                        "initial guess has " + std::to_string(x0.size()) + " entries but matrix has " +
                            std::to_string(a.cols()) + " columns");
    }

    if (is_generalized(config.method)) {
      return run_partitioned(partition_system(a, b, config.permutation_policy), a, b, x0, config);
    }

    StepFn step;
    if (config.method == Method::Baseline) {
      if (a.rows() >= a.cols()) {
        throw SolverError(ErrorKind::NotUnderdetermined,
                          "method requires m < n (got " + std::to_string(a.rows()) + "x" +
                              std::to_string(a.cols()) + ")");
      }
      step = [&](const Vector& z) { return baseline_step(a, b, z); };
    } else {
      if (!a.is_square()) {
        throw SolverError(ErrorKind::NotSquare, "method requires a square matrix (got " +
                                                    std::to_string(a.rows()) + "x" +
                                                    std::to_string(a.cols()) + ")");
      }
      if (config.method == Method::ClassicalJacobi) {
        step = [&](const Vector& x) { return classical_jacobi_step(a, b, x); };
      } else {
        step = [&](const Vector& x) { return classical_gauss_seidel_step(a, b, x); };
      }
    }
    return drive(a, b, x0, step, base_report(a, config, identity_permutation(a.cols())));
  } catch (const SolverError& e) {
    return error_report(e, a, b, x0, config);
  }
}

SolveReport run(const DenseMatrix& a, const Vector& b, const SolverConfig& config) {
  return run(a, b, Vector(a.cols()), config);
}

}  // namespace undersolve
