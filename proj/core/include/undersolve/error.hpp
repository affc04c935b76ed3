#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace undersolve {

enum class ErrorKind {
  DimensionMismatch,
  NonFinite,
  NotUnderdetermined,
  NotSquare,
  RankDeficient,
  ZeroRow,
  ZeroTailRow,
  ZeroDiagonal,
  SingularTriangular,
  Inconsistent,
  InvalidConfig,
  ParseError,
  UnsupportedFormat,
  RaggedRows,
  IoError,
};

/// Stable lowercase identifier, used in reports and CLI messages.
std::string_view to_string(ErrorKind kind) noexcept;

/// Parses the identifier produced by `to_string`; throws on unknown names.
ErrorKind error_kind_from_string(std::string_view name);

class SolverError : public std::runtime_error {
 public:
  SolverError(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace undersolve
