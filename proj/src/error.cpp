#include <cmath>
#include <string>

#include "fzeta/error.hpp"
#include "fzeta/types.hpp"

namespace fzeta {

std::string_view error_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::PoleAtOne: return "PoleAtOne";
    case ErrorKind::PoleAtZero: return "PoleAtZero";
    case ErrorKind::ToleranceUnreachable: return "ToleranceUnreachable";
    case ErrorKind::FactorSingular: return "FactorSingular";
    case ErrorKind::BadAlpha: return "BadAlpha";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::EmptyTruncation: return "EmptyTruncation";
    case ErrorKind::TruncationTooShort: return "TruncationTooShort";
    case ErrorKind::PoleHit: return "PoleHit";
    case ErrorKind::InsufficientAtoms: return "InsufficientAtoms";
    case ErrorKind::UnsupportedKind: return "UnsupportedKind";
    case ErrorKind::AssumptionViolated: return "AssumptionViolated";
    case ErrorKind::DivergentTail: return "DivergentTail";
    case ErrorKind::UnboundedOnSegment: return "UnboundedOnSegment";
    case ErrorKind::WindowTooSmall: return "WindowTooSmall";
    case ErrorKind::ProfileDiscontinuous: return "ProfileDiscontinuous";
    case ErrorKind::RadiusTooSmall: return "RadiusTooSmall";
    case ErrorKind::BoxOutsideStrip: return "BoxOutsideStrip";
    case ErrorKind::GuardRejected: return "GuardRejected";
  }
  return "Unknown";
}

void EvalOptions::validate() const {
  if (!(abs_tol > 0.0) || abs_tol < 1e-300) {
    throw Error(ErrorKind::InvalidArgument, "abs_tol must be a positive representable number");
  }
  if (max_terms < 1) throw Error(ErrorKind::InvalidArgument, "max_terms must be >= 1");
}

cplx checked(cplx z, const char* where) {
  if (!is_finite(z)) throw Error(ErrorKind::Overflow, std::string("non-finite result in ") + where);
  return z;
}

}  // namespace fzeta
