#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fzeta {

enum class ErrorKind {
  InvalidArgument,
  ParseError,
  PoleAtOne,
  PoleAtZero,
  ToleranceUnreachable,
  FactorSingular,
  BadAlpha,
  Overflow,
  EmptyTruncation,
  TruncationTooShort,
  PoleHit,
  InsufficientAtoms,
  UnsupportedKind,
  AssumptionViolated,
  DivergentTail,
  UnboundedOnSegment,
  WindowTooSmall,
  ProfileDiscontinuous,
  RadiusTooSmall,
  BoxOutsideStrip,
  GuardRejected,
};

std::string_view error_name(ErrorKind kind) noexcept;

// Every failure in the library is reported as an Error carrying its kind; the
// CLI maps kinds onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(error_name(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace fzeta
