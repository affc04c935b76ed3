#pragma once

#include <cstddef>
#include <cstdint>

#include "undersolve/matrix.hpp"

namespace undersolve {

struct GeneratorOptions {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::uint64_t seed = 0;
  /// Require both generalized splittings to pass the sufficient conditions in
  /// some norm (identity partition).
  bool certified = false;
};

struct GeneratedSystem {
  DenseMatrix a;
  Vector b;
  Vector x_star;  // b = a·x_star
};

/// Random system with a known solution, x* uniform in [-1, 1]^n.
///
/// Plain systems draw A uniformly from [-10, 10]. Certified systems use a
/// strongly diagonally dominant head block and a tail block whose first m
/// columns hold one dominant entry each (row i in column i). The other n − 2m
/// tail columns hold noise that is halved (at most 60 times) until the
/// conditions hold, resampling otherwise. Hence n ≥ 2m is required.
///
/// Deterministic for a fixed seed. Throws NotUnderdetermined when m ≥ n and
/// InvalidConfig when a certified system cannot be produced.
GeneratedSystem generate_system(const GeneratorOptions& options);

}  // namespace undersolve
