#include "undersolve/error.hpp"

#include <array>
#include <utility>

namespace undersolve {

namespace {

constexpr std::array<std::pair<ErrorKind, std::string_view>, 15> kNames{{
    {ErrorKind::DimensionMismatch, "dimension_mismatch"},
    {ErrorKind::NonFinite, "non_finite"},
    {ErrorKind::NotUnderdetermined, "not_underdetermined"},
    {ErrorKind::NotSquare, "not_square"},
    {ErrorKind::RankDeficient, "rank_deficient"},
    {ErrorKind::ZeroRow, "zero_row"},
    {ErrorKind::ZeroTailRow, "zero_tail_row"},
    {ErrorKind::ZeroDiagonal, "zero_diagonal"},
    {ErrorKind::SingularTriangular, "singular_triangular"},
    {ErrorKind::Inconsistent, "inconsistent"},
    {ErrorKind::InvalidConfig, "invalid_config"},
    {ErrorKind::ParseError, "parse_error"},
    {ErrorKind::UnsupportedFormat, "unsupported_format"},
    {ErrorKind::RaggedRows, "ragged_rows"},
    {ErrorKind::IoError, "io_error"},
}};

}  // namespace

std::string_view to_string(ErrorKind kind) noexcept {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

ErrorKind error_kind_from_string(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  throw SolverError(ErrorKind::ParseError, "unknown error kind '" + std::string(name) + "'");
}

}  // namespace undersolve
