#pragma once

#include "fzeta/types.hpp"

namespace fzeta {

// log Gamma(z) on a continuous-enough branch for exponentiation. Lanczos (g = 7,
// 9 terms) for Re z >= 1/2, reflection below. Throws PoleHit at z = 0, -1, -2, ...
cplx log_gamma(cplx z);
cplx gamma(cplx z);

// log(sin(pi z)), stable for large |Im z|.
cplx log_sin_pi(cplx z);

// Digamma for real x > 0.
double digamma(double x);

}  // namespace fzeta
