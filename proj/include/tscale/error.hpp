#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tscale {

enum class ErrorKind {
  InvalidScale,
  QueryOutsideScale,
  UnboundedQuery,
  DegenerateWindow,
  QueryOutsideWindow,
  SyntaxError,
  DomainError,
  NotDifferentiable,
  NoConvergence,
  LengthMismatch,
  NotSubset,
  NotMonotone,
  ChainNotAscending,
  HypothesisViolated,
};

std::string_view kind_name(ErrorKind kind) noexcept;

/// Base of every error raised by the library. `kind()` is stable and is what
/// the CLI maps onto exit codes; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t column, std::vector<std::string> expected,
              const std::string& message);

  /// 1-based column of the offending token.
  std::size_t column() const noexcept { return column_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t column_;
  std::vector<std::string> expected_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& message);

}  // namespace tscale
