#include "ptcavity/error.hpp"

namespace ptcavity {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::NoMeetingPoint: return "NoMeetingPoint";
    case ErrorKind::BalanceInconsistent: return "BalanceInconsistent";
    case ErrorKind::DegenerateDiscriminant: return "DegenerateDiscriminant";
    case ErrorKind::ZeroCoupling: return "ZeroCoupling";
    case ErrorKind::BelowThreshold: return "BelowThreshold";
    case ErrorKind::NonFiniteState: return "NonFiniteState";
    case ErrorKind::InvalidGrid: return "InvalidGrid";
    case ErrorKind::Config: return "Config";
  }
  return "Unknown";
}

}  // namespace ptcavity
