#include "tscale/error.hpp"

#include <utility>

namespace tscale {

std::string_view kind_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidScale: return "InvalidScale";
    case ErrorKind::QueryOutsideScale: return "QueryOutsideScale";
    case ErrorKind::UnboundedQuery: return "UnboundedQuery";
    case ErrorKind::DegenerateWindow: return "DegenerateWindow";
    case ErrorKind::QueryOutsideWindow: return "QueryOutsideWindow";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::NotDifferentiable: return "NotDifferentiable";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::NotSubset: return "NotSubset";
    case ErrorKind::NotMonotone: return "NotMonotone";
    case ErrorKind::ChainNotAscending: return "ChainNotAscending";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
  }
  return "Unknown";
}

SyntaxError::SyntaxError(std::size_t column, std::vector<std::string> expected,
                         const std::string& message)
    : Error(ErrorKind::SyntaxError, message),
      column_(column),
      expected_(std::move(expected)) {}

void raise(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace tscale
