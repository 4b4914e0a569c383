#pragma once

#include <stdexcept>
#include <string>

namespace tjcm {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied parameter is outside its documented domain.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// An input object violates an invariant its consumer relies on.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// A computed quantity broke a structural identity (e.g. a cross term that
/// must vanish did not). Usually means a malformed block.
class InternalConsistency : public Error {
 public:
  using Error::Error;
};

/// Fock-space truncation lost more probability than allowed.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// RK4 norm drift exceeded its bound.
class StepSizeError : public Error {
 public:
  using Error::Error;
};

/// Operation called outside the regime where it is defined.
class NotApplicable : public Error {
 public:
  using Error::Error;
};

/// Bad channel name, preset name, or flag combination.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// A run would exceed a configured resource bound.
class ResourceRefusal : public Error {
 public:
  using Error::Error;
};

}  // namespace tjcm
