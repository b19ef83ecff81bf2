#include "modstrat/common/error.hpp"

namespace modstrat {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnsupportedRing: return "UnsupportedRing";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonHomogeneousInput: return "NonHomogeneousInput";
    case ErrorCode::NotAssociative: return "NotAssociative";
    case ErrorCode::NoIdentity: return "NoIdentity";
    case ErrorCode::NoInverse: return "NoInverse";
    case ErrorCode::InvalidSubgroup: return "InvalidSubgroup";
    case ErrorCode::NotASubgroup: return "NotASubgroup";
    case ErrorCode::ZeroClass: return "ZeroClass";
    case ErrorCode::RingMismatch: return "RingMismatch";
    case ErrorCode::GroupMismatch: return "GroupMismatch";
    case ErrorCode::StrategyUnavailable: return "StrategyUnavailable";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::RangeExceeded: return "RangeExceeded";
    case ErrorCode::LiftFailed: return "LiftFailed";
    case ErrorCode::ResolutionMismatch: return "ResolutionMismatch";
    case ErrorCode::CapTooSmall: return "CapTooSmall";
    case ErrorCode::PresentationMissing: return "PresentationMissing";
    case ErrorCode::ModelMismatch: return "ModelMismatch";
    case ErrorCode::NotElementaryAbelian: return "NotElementaryAbelian";
    case ErrorCode::InvalidLattice: return "InvalidLattice";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::Overflow: return "Overflow";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace modstrat
