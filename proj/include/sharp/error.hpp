#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sharp {

enum class ErrorKind {
  InvalidParam,
  InvalidDomain,
  NonConvergent,
  NonFinite,
  BelowThreshold,
  AboveThreshold,
  NegativeValues,
  DegenerateInput,
  NotConverged,
  StepFailure,
  SlopeSingularity,
  Inadmissible,
  PoleSingularity,
  SupportViolation,
  ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure in the library surfaces as this exception; callers that need
// a machine-readable tag switch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace sharp
