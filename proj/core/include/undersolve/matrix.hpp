#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "undersolve/error.hpp"

namespace undersolve {

/// Dense real vector. All entries are finite; constructors and every
/// arithmetic routine in this header throw `SolverError(NonFinite)` otherwise.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t length, double value = 0.0);
  explicit Vector(std::vector<double> entries);
  Vector(std::initializer_list<double> entries);

  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double operator[](std::size_t i) const { return data_[i]; }
  double& operator[](std::size_t i) { return data_[i]; }

  std::span<const double> values() const noexcept { return data_; }
  std::span<double> values() noexcept { return data_; }
  const std::vector<double>& raw() const noexcept { return data_; }

  auto begin() const noexcept { return data_.begin(); }
  auto end() const noexcept { return data_.end(); }

  friend bool operator==(const Vector&, const Vector&) = default;

 private:
  std::vector<double> data_;
};

/// Dense real matrix stored row-major.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> row_major);
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(data_).subspan(i * cols_, cols_);
  }
  std::span<double> row(std::size_t i) { return std::span<double>(data_).subspan(i * cols_, cols_); }

  std::span<const double> values() const noexcept { return data_; }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

enum class NormKind { One, Infinity, Frobenius };

// Structural primitives of the sign-matrix iteration.

/// n×m matrix whose (j, i) entry is the sign (+1, 0, -1) of a(i, j).
/// Zero is tested exactly.
DenseMatrix sign_matrix(const DenseMatrix& a);

/// Per-row l1 norms.
Vector row_one_norms(const DenseMatrix& a);

/// Induced 1-norm (max column sum), induced ∞-norm (max row sum) or Frobenius.
double matrix_norm(const DenseMatrix& a, NormKind which);

/// Vector norm paired with `which`: l1, l∞, or l2 for Frobenius (the
/// vector norm the Frobenius norm is consistent with).
double vector_norm(const Vector& v, NormKind which);

/// Pivot threshold used for triangular and diagonal singularity tests:
/// 1e-12 times the ∞-norm of `a`, or 1e-12 when `a` is zero.
double singularity_threshold(const DenseMatrix& a);

/// Solves l·y = rhs for lower-triangular l. Only the lower triangle is read.
Vector forward_substitution(const DenseMatrix& l, const Vector& rhs);

/// Solves u·y = rhs for upper-triangular u. Only the upper triangle is read.
Vector backward_substitution(const DenseMatrix& u, const Vector& rhs);

// Plumbing.

Vector multiply(const DenseMatrix& a, const Vector& x);
DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix transpose(const DenseMatrix& a);
DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b);

Vector add(const Vector& x, const Vector& y);
Vector subtract(const Vector& x, const Vector& y);
Vector scale(const Vector& x, double alpha);

double norm_one(const Vector& x);
double norm_inf(const Vector& x);
double norm_two(const Vector& x);

/// Columns [first, first + count) of `a`.
DenseMatrix column_block(const DenseMatrix& a, std::size_t first, std::size_t count);
/// Rows [first, first + count) of `a`.
DenseMatrix row_block(const DenseMatrix& a, std::size_t first, std::size_t count);
/// a with its columns reordered so that column j of the result is column order[j] of a.
DenseMatrix select_columns(const DenseMatrix& a, std::span<const std::size_t> order);

Vector diagonal(const DenseMatrix& a);
/// Lower triangle including the diagonal; strictly upper entries zeroed.
DenseMatrix lower_triangle(const DenseMatrix& a);

/// Residual a·x - b.
Vector residual(const DenseMatrix& a, const Vector& x, const Vector& b);

}  // namespace undersolve
