#include "undersolve/generate.hpp"

#include <random>
#include <string>

#include "undersolve/convergence.hpp"
#include "undersolve/partition.hpp"

namespace undersolve {

namespace {

constexpr int kMaxHalvings = 60;
constexpr int kMaxAttempts = 20;

bool certified_for_both(const DenseMatrix& a, const Vector& b) {
  try {
    const PartitionedSystem sys = partition_system(a, b, PermutationPolicy::Identity);
    return check_conditions(sys, Splitting::Jacobi).overall_certified &&
           check_conditions(sys, Splitting::GaussSeidel).overall_certified;
  } catch (const SolverError&) {
    return false;
  }
}

}  // namespace

GeneratedSystem generate_system(const GeneratorOptions& options) {
  const std::size_t m = options.rows;
  const std::size_t n = options.cols;
  if (m == 0 || m >= n) {
    throw SolverError(ErrorKind::NotUnderdetermined,
                      "generator requires 1 <= rows < cols (got " + std::to_string(m) + "x" + std::to_string(n) + ")");
  }
  if (options.certified && n < 2 * m) {
    throw SolverError(ErrorKind::InvalidConfig,
                      "certified generation requires cols >= 2 * rows (got " + std::to_string(m) + "x" +
                          std::to_string(n) + ")");
  }

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> entry(-10.0, 10.0);
  std::bernoulli_distribution coin(0.5);

  std::vector<double> x_star(n);
  for (double& v : x_star) v = unit(rng);

  DenseMatrix a(m, n);
  if (!options.certified) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) a(i, j) = entry(rng);
    }
  } else {
    const std::size_t k = n - m;
    const double dominance = 2.0 * static_cast<double>(m);
    std::uniform_real_distribution<double> head_diag(dominance, dominance + 1.0);
    std::uniform_real_distribution<double> tail_lead(1.0, 2.0);

    bool done = false;
    for (int attempt = 0; attempt < kMaxAttempts && !done; ++attempt) {
      DenseMatrix head(m, m);
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          head(i, j) = i == j ? (coin(rng) ? 1.0 : -1.0) * head_diag(rng) : unit(rng);
        }
      }
      DenseMatrix lead(m, k);
      DenseMatrix noise(m, k);
      // Column i of the tail carries row i's dominant entry and nothing else;
      // a small entry sharing that column would still contribute its sign.
      // Noise lives in the remaining k - m columns only.
      for (std::size_t i = 0; i < m; ++i) {
        lead(i, i) = (coin(rng) ? 1.0 : -1.0) * tail_lead(rng);
        for (std::size_t l = m; l < k; ++l) noise(i, l) = unit(rng);
      }

      double scale = 1.0;
      for (int halving = 0; halving <= kMaxHalvings; ++halving, scale *= 0.5) {
        for (std::size_t i = 0; i < m; ++i) {
          for (std::size_t j = 0; j < m; ++j) a(i, j) = head(i, j);
          for (std::size_t l = 0; l < k; ++l) a(i, m + l) = lead(i, l) + scale * noise(i, l);
        }
        if (certified_for_both(a, Vector(m))) {
          done = true;
          break;
        }
      }
    }
    if (!done) {
      throw SolverError(ErrorKind::InvalidConfig, "could not generate a certified " + std::to_string(m) + "x" +
                                                      std::to_string(n) + " system");
    }
  }

  Vector x(std::move(x_star));
  Vector b = multiply(a, x);
  return GeneratedSystem{std::move(a), std::move(b), std::move(x)};
}

}  // namespace undersolve
