#pragma once

#include <complex>
#include <cstdint>
#include <numbers>

#include "fzeta/error.hpp"

namespace fzeta {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct EvalOptions {
  double abs_tol = 1e-13;            // target absolute error of a single evaluation
  std::int64_t max_terms = 20'000'000;  // cap on Euler-Maclaurin head length

  void validate() const;
};

inline bool is_finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Throws Overflow if z has a non-finite component.
cplx checked(cplx z, const char* where);

}  // namespace fzeta
