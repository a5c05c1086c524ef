#pragma once

#include <stdexcept>
#include <string>

namespace ptcavity {

enum class ErrorKind {
  InvalidParams,
  NoMeetingPoint,
  BalanceInconsistent,
  DegenerateDiscriminant,
  ZeroCoupling,
  BelowThreshold,
  NonFiniteState,
  InvalidGrid,
  Config,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a kind so the CLI can map it to an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ptcavity
