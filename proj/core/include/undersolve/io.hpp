#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "undersolve/iterate.hpp"
#include "undersolve/matrix.hpp"

namespace undersolve::io {

enum class MatrixMarketLayout { Array, Coordinate };

/// Accepts "matrix coordinate|array real|integer general". Array data is
/// column-major. Throws ParseError (with line number) or UnsupportedFormat.
DenseMatrix read_matrix_market(std::string_view text);
std::string write_matrix_market(const DenseMatrix& a, MatrixMarketLayout layout = MatrixMarketLayout::Array);

/// One matrix row per line, comma separated. LF or CRLF.
DenseMatrix read_csv_matrix(std::string_view text);
/// 17 significant digits, LF line endings.
std::string write_csv_matrix(const DenseMatrix& a);

/// Flattens a single-row or single-column matrix.
Vector as_vector(const DenseMatrix& a);
DenseMatrix as_column(const Vector& v);

/// Format chosen by extension: .mtx → Matrix Market, .csv → CSV.
DenseMatrix load_matrix(const std::filesystem::path& path);
Vector load_vector(const std::filesystem::path& path);
void save_matrix(const std::filesystem::path& path, const DenseMatrix& a);
void save_vector(const std::filesystem::path& path, const Vector& v);
void save_text(const std::filesystem::path& path, std::string_view text);

struct ProblemFile {
  DenseMatrix a;
  Vector b;
  std::optional<Vector> x0;
  std::string name;
};

/// Loads and cross-checks a system; errors name the offending file.
ProblemFile load_problem(const std::filesystem::path& matrix, const std::filesystem::path& rhs,
                         const std::optional<std::filesystem::path>& x0 = std::nullopt);

/// Key-ordered JSON object. Numbers round-trip exactly.
std::string write_report(const SolveReport& report);
SolveReport read_report(std::string_view text);

/// JSON array of reports, in the given order.
std::string write_reports(const std::vector<SolveReport>& reports);
std::vector<SolveReport> read_reports(std::string_view text);

std::string write_conditions(const ConditionReport& report);

}  // namespace undersolve::io
