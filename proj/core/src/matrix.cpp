#include "undersolve/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace undersolve {

namespace {

void require_finite(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw SolverError(ErrorKind::NonFinite, std::string(what) + " contains a non-finite entry");
    }
  }
}

void require_same_length(const Vector& x, const Vector& y, const char* op) {
  if (x.size() != y.size()) {
    throw SolverError(ErrorKind::DimensionMismatch,
                      std::string(op) + ": vector lengths " + std::to_string(x.size()) + " and " +
                          std::to_string(y.size()) + " differ");
  }
}

// Threshold from the ∞-norm of the triangle that a substitution actually reads.
double triangle_threshold(const DenseMatrix& a, bool lower) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double sum = 0.0;
    const std::size_t lo = lower ? 0 : i;
    const std::size_t hi = lower ? i + 1 : a.cols();
    for (std::size_t j = lo; j < hi; ++j) sum += std::abs(a(i, j));
    best = std::max(best, sum);
  }
  return 1e-12 * (best > 0.0 ? best : 1.0);
}

std::string shape(const DenseMatrix& a) {
  return std::to_string(a.rows()) + "x" + std::to_string(a.cols());
}

}  // namespace

// --- Vector ---------------------------------------------------------------

Vector::Vector(std::size_t length, double value) : data_(length, value) {
  require_finite(data_, "vector");
}

Vector::Vector(std::vector<double> entries) : data_(std::move(entries)) {
  require_finite(data_, "vector");
}

Vector::Vector(std::initializer_list<double> entries) : data_(entries) {
  require_finite(data_, "vector");
}

// --- DenseMatrix ----------------------------------------------------------

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (data_.size() != rows_ * cols_) {
    throw SolverError(ErrorKind::DimensionMismatch,
                      "matrix storage holds " + std::to_string(data_.size()) + " entries, expected " +
                          std::to_string(rows_ * cols_));
  }
  require_finite(data_, "matrix");
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) {
      throw SolverError(ErrorKind::RaggedRows, "matrix literal has rows of different lengths");
    }
    data_.insert(data_.end(), r.begin(), r.end());
  }
  require_finite(data_, "matrix");
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix eye(n, n);
  for (std::size_t i = 0; i < n; ++i) eye(i, i) = 1.0;
  return eye;
}

// --- sign-matrix primitives ------------------------------------------------

DenseMatrix sign_matrix(const DenseMatrix& a) {
  DenseMatrix s(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double v = a(i, j);
      s(j, i) = v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0);
    }
  }
  return s;
}

Vector row_one_norms(const DenseMatrix& a) {
  std::vector<double> norms(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (double v : a.row(i)) norms[i] += std::abs(v);
  }
  return Vector(std::move(norms));
}

double matrix_norm(const DenseMatrix& a, NormKind which) {
  switch (which) {
    case NormKind::One: {
      std::vector<double> col_sums(a.cols(), 0.0);
      for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) col_sums[j] += std::abs(a(i, j));
      }
      return col_sums.empty() ? 0.0 : *std::max_element(col_sums.begin(), col_sums.end());
    }
    case NormKind::Infinity: {
      double best = 0.0;
      for (std::size_t i = 0; i < a.rows(); ++i) {
        double sum = 0.0;
        for (double v : a.row(i)) sum += std::abs(v);
        best = std::max(best, sum);
      }
      return best;
    }
    case NormKind::Frobenius: {
      double sum = 0.0;
      for (double v : a.values()) sum += v * v;
      return std::sqrt(sum);
    }
  }
  return 0.0;
}

double vector_norm(const Vector& v, NormKind which) {
  switch (which) {
    case NormKind::One:
      return norm_one(v);
    case NormKind::Infinity:
      return norm_inf(v);
    case NormKind::Frobenius:
      return norm_two(v);
  }
  return 0.0;
}

double singularity_threshold(const DenseMatrix& a) {
  const double scale = matrix_norm(a, NormKind::Infinity);
  return 1e-12 * (scale > 0.0 ? scale : 1.0);
}

Vector forward_substitution(const DenseMatrix& l, const Vector& rhs) {
  if (!l.is_square() || l.rows() != rhs.size()) {
    throw SolverError(ErrorKind::DimensionMismatch,
                      "forward substitution: matrix " + shape(l) + " with rhs of length " +
                          std::to_string(rhs.size()));
  }
  const double tiny = triangle_threshold(l, true);
  const std::size_t n = l.rows();
  std::vector<double> y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double pivot = l(i, i);
    if (std::abs(pivot) <= tiny) {
      throw SolverError(ErrorKind::SingularTriangular,
                        "forward substitution: diagonal entry " + std::to_string(i) + " is singular");
    }
    double sum = rhs[i];
    for (std::size_t j = 0; j < i; ++j) sum -= l(i, j) * y[j];
    y[i] = sum / pivot;
  }
  return Vector(std::move(y));
}

Vector backward_substitution(const DenseMatrix& u, const Vector& rhs) {
  if (!u.is_square() || u.rows() != rhs.size()) {
    throw SolverError(ErrorKind::DimensionMismatch,
                      "backward substitution: matrix " + shape(u) + " with rhs of length " +
                          std::to_string(rhs.size()));
  }
  const double tiny = triangle_threshold(u, false);
  const std::size_t n = u.rows();
  std::vector<double> y(n, 0.0);
  for (std::size_t ii = n; ii-- > 0;) {
    const double pivot = u(ii, ii);
    if (std::abs(pivot) <= tiny) {
      throw SolverError(ErrorKind::SingularTriangular,
                        "backward substitution: diagonal entry " + std::to_string(ii) + " is singular");
    }
    double sum = rhs[ii];
    for (std::size_t j = ii + 1; j < n; ++j) sum -= u(ii, j) * y[j];
    y[ii] = sum / pivot;
  }
  return Vector(std::move(y));
}

// --- plumbing --------------------------------------------------------------

Vector multiply(const DenseMatrix& a, const Vector& x) {
  if (a.cols() != x.size()) {
    throw SolverError(ErrorKind::DimensionMismatch,
                      "matrix " + shape(a) + " times vector of length " + std::to_string(x.size()));
  }
  std::vector<double> y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto r = a.row(i);
    double sum = 0.0;
    for (std::size_t j = 0; j < r.size(); ++j) sum += r[j] * x[j];
    y[i] = sum;
  }
  return Vector(std::move(y));
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) {
    throw SolverError(ErrorKind::DimensionMismatch,
                      "matrix " + shape(a) + " times matrix " + shape(b));
  }
  std::vector<double> c(a.rows() * b.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c[i * b.cols() + j] += aik * b(k, j);
    }
  }
  return DenseMatrix(a.rows(), b.cols(), std::move(c));
}

DenseMatrix transpose(const DenseMatrix& a) {
  DenseMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  }
  return t;
}

DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw SolverError(ErrorKind::DimensionMismatch, "matrix " + shape(a) + " minus matrix " + shape(b));
  }
  std::vector<double> c(a.values().begin(), a.values().end());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] -= b.values()[k];
  return DenseMatrix(a.rows(), a.cols(), std::move(c));
}

Vector add(const Vector& x, const Vector& y) {
  require_same_length(x, y, "add");
  std::vector<double> z(x.raw());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] += y[i];
  return Vector(std::move(z));
}

Vector subtract(const Vector& x, const Vector& y) {
  require_same_length(x, y, "subtract");
  std::vector<double> z(x.raw());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] -= y[i];
  return Vector(std::move(z));
}

Vector scale(const Vector& x, double alpha) {
  std::vector<double> z(x.raw());
  for (double& v : z) v *= alpha;
  return Vector(std::move(z));
}

double norm_one(const Vector& x) {
  double sum = 0.0;
  for (double v : x) sum += std::abs(v);
  return sum;
}

double norm_inf(const Vector& x) {
  double best = 0.0;
  for (double v : x) best = std::max(best, std::abs(v));
  return best;
}

double norm_two(const Vector& x) {
  double sum = 0.0;
  for (double v : x) sum += v * v;
  return std::sqrt(sum);
}

DenseMatrix column_block(const DenseMatrix& a, std::size_t first, std::size_t count) {
  if (first + count > a.cols()) {
    throw SolverError(ErrorKind::DimensionMismatch, "column block exceeds matrix " + shape(a));
  }
  DenseMatrix block(a.rows(), count);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < count; ++j) block(i, j) = a(i, first + j);
  }
  return block;
}

DenseMatrix row_block(const DenseMatrix& a, std::size_t first, std::size_t count) {
  if (first + count > a.rows()) {
    throw SolverError(ErrorKind::DimensionMismatch, "row block exceeds matrix " + shape(a));
  }
  const auto begin = a.values().begin() + static_cast<std::ptrdiff_t>(first * a.cols());
  return DenseMatrix(count, a.cols(),
                     std::vector<double>(begin, begin + static_cast<std::ptrdiff_t>(count * a.cols())));
}

DenseMatrix select_columns(const DenseMatrix& a, std::span<const std::size_t> order) {
  DenseMatrix out(a.rows(), order.size());
  for (std::size_t j = 0; j < order.size(); ++j) {
    if (order[j] >= a.cols()) {
      throw SolverError(ErrorKind::DimensionMismatch,
                        "column index " + std::to_string(order[j]) + " out of range for " + shape(a));
    }
    for (std::size_t i = 0; i < a.rows(); ++i) out(i, j) = a(i, order[j]);
  }
  return out;
}

Vector diagonal(const DenseMatrix& a) {
  const std::size_t n = std::min(a.rows(), a.cols());
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = a(i, i);
  return Vector(std::move(d));
}

DenseMatrix lower_triangle(const DenseMatrix& a) {
  DenseMatrix l(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j <= i && j < a.cols(); ++j) l(i, j) = a(i, j);
  }
  return l;
}

Vector residual(const DenseMatrix& a, const Vector& x, const Vector& b) {
  return subtract(multiply(a, x), b);
}

}  // namespace undersolve
