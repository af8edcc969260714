#pragma once

#include <stdexcept>
#include <string>

namespace halphen {

/// Failure categories. Each maps onto one CLI exit code (see exit_code()).
enum class ErrorKind {
  Usage,                 // malformed input or violated precondition
  Precondition,          // mathematically well-formed input outside the operation's domain
  DegenerateConfig,      // point configuration fails a genericity requirement
  Unsupported,           // no implementation for the requested parameter
  InconsistentGeometry,  // a computed invariant contradicts the theory
  Mismatch,              // a verification produced the wrong value
  BadPrime,              // the chosen prime cannot be used for this input
  RetryExhausted,        // randomized stage failed its whole retry budget
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define HALPHEN_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                        \
   public:                                                           \
    explicit Name(const std::string& what) : Error(ErrorKind::Name, what) {} \
  };

HALPHEN_DEFINE_ERROR(Usage)
HALPHEN_DEFINE_ERROR(Precondition)
HALPHEN_DEFINE_ERROR(DegenerateConfig)
HALPHEN_DEFINE_ERROR(Unsupported)
HALPHEN_DEFINE_ERROR(InconsistentGeometry)
HALPHEN_DEFINE_ERROR(Mismatch)
HALPHEN_DEFINE_ERROR(BadPrime)
HALPHEN_DEFINE_ERROR(RetryExhausted)

#undef HALPHEN_DEFINE_ERROR

using UsageError = Usage;
using PreconditionError = Precondition;

/// 0 ok, 2 precondition/usage, 3 mathematical mismatch, 4 environment.
inline int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage:
    case ErrorKind::Precondition:
    case ErrorKind::DegenerateConfig:
    case ErrorKind::Unsupported:
      return 2;
    case ErrorKind::InconsistentGeometry:
    case ErrorKind::Mismatch:
      return 3;
    case ErrorKind::BadPrime:
    case ErrorKind::RetryExhausted:
      return 4;
  }
  return 1;
}

}  // namespace halphen
