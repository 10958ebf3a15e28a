#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cfrac {

enum class ErrorCode {
  invalid_argument,
  duplicate_label,
  cycle,
  unknown_event,
  event_mismatch,
  out_of_range,
  scope,
  not_lowerset,
  not_causal,
  budget_exceeded,
  solver,
  parse,
  validation,
  io,
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct InvalidArgumentError : Error {
  explicit InvalidArgumentError(const std::string& w) : Error(ErrorCode::invalid_argument, w) {}
};
struct DuplicateLabelError : Error {
  explicit DuplicateLabelError(const std::string& w) : Error(ErrorCode::duplicate_label, w) {}
};
struct CycleError : Error {
  explicit CycleError(const std::string& w) : Error(ErrorCode::cycle, w) {}
};
struct UnknownEventError : Error {
  explicit UnknownEventError(const std::string& w) : Error(ErrorCode::unknown_event, w) {}
};
struct EventMismatchError : Error {
  explicit EventMismatchError(const std::string& w) : Error(ErrorCode::event_mismatch, w) {}
};
struct OutOfRangeError : Error {
  explicit OutOfRangeError(const std::string& w) : Error(ErrorCode::out_of_range, w) {}
};
struct ScopeError : Error {
  explicit ScopeError(const std::string& w) : Error(ErrorCode::scope, w) {}
};
struct NotLowersetError : Error {
  explicit NotLowersetError(const std::string& w) : Error(ErrorCode::not_lowerset, w) {}
};
struct NotCausalError : Error {
  explicit NotCausalError(const std::string& w) : Error(ErrorCode::not_causal, w) {}
};

/// Carries the size of the function space that tripped the guard. The exact
/// count is only meaningful when it fits in 64 bits; log2 always is.
struct BudgetExceededError : Error {
  BudgetExceededError(const std::string& w, double log2_count, std::uint64_t count, bool exact)
      : Error(ErrorCode::budget_exceeded, w),
        log2_count(log2_count),
        count(count),
        count_exact(exact) {}
  double log2_count;
  std::uint64_t count;
  bool count_exact;
};

struct SolverError : Error {
  explicit SolverError(const std::string& w) : Error(ErrorCode::solver, w) {}
};
struct ParseError : Error {
  explicit ParseError(const std::string& w) : Error(ErrorCode::parse, w) {}
};
struct ValidationError : Error {
  explicit ValidationError(const std::string& w) : Error(ErrorCode::validation, w) {}
};
struct IoError : Error {
  explicit IoError(const std::string& w) : Error(ErrorCode::io, w) {}
};
struct InternalError : Error {
  explicit InternalError(const std::string& w) : Error(ErrorCode::internal, w) {}
};

}  // namespace cfrac
