#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nabla {

enum class ErrorCode {
  MismatchedVariables,
  RingMismatch,
  FieldMismatch,
  MissingAssignment,
  DivisionByZero,
  InvalidArgument,
  NotArtinian,
  NotZeroDimensional,
  InseparableCase,
  NotLocal,
  ResidueNotGroundField,
  PointNotOnScheme,
  NotEquidimensionalAssertionFailed,
  BasisNotNested,
  DimensionMismatch,
  ContainmentViolated,
  UncertifiedReduction,
  TraceNotStabilized,
  TailMismatch,
  SyntaxError,
  UnboundName,
  Redefinition,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the engine carries one of the codes above so that
/// callers (and the CLI) can react without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Syntax errors from the polynomial and script parsers. Line and column are
/// 1-based; line is 0 for single-expression parses.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t column, const std::string& expected)
      : Error(ErrorCode::SyntaxError, "line " + std::to_string(line) + ", column " +
                                          std::to_string(column) + ": expected " + expected),
        line_(line),
        column_(column),
        expected_(expected) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string expected_;
};

}  // namespace nabla
