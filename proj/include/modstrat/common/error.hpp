#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace modstrat {

enum class ErrorCode {
  UnsupportedRing,
  DimensionMismatch,
  NonHomogeneousInput,
  NotAssociative,
  NoIdentity,
  NoInverse,
  InvalidSubgroup,
  NotASubgroup,
  ZeroClass,
  RingMismatch,
  GroupMismatch,
  StrategyUnavailable,
  CapExceeded,
  RangeExceeded,
  LiftFailed,
  ResolutionMismatch,
  CapTooSmall,
  PresentationMissing,
  ModelMismatch,
  NotElementaryAbelian,
  InvalidLattice,
  InvalidInput,
  Overflow,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI exit-code logic) can dispatch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace modstrat
