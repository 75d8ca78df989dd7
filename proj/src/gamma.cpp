#include "fzeta/gamma.hpp"

#include <array>
#include <cmath>

namespace fzeta {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

bool at_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

}  // namespace

cplx log_sin_pi(cplx z) {
  const double y = kPi * z.imag();
  if (std::abs(y) < 30.0) return std::log(std::sin(kPi * z));
  // sin(pi z) = (e^{i pi z} - e^{-i pi z}) / 2i; keep the dominant exponential.
  const cplx iz = cplx(0.0, kPi) * z;
  if (y > 0) {
    // dominant term -e^{-i pi z}/(2i)
    return -iz + std::log(cplx(0.0, 0.5)) + std::log(1.0 - std::exp(2.0 * iz));
  }
  return iz + std::log(cplx(0.0, -0.5)) + std::log(1.0 - std::exp(-2.0 * iz));
}

cplx log_gamma(cplx z) {
  if (at_nonpositive_integer(z)) throw Error(ErrorKind::PoleHit, "Gamma pole at non-positive integer");
  if (z.real() < 0.5) {
    // Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return std::log(kPi) - log_sin_pi(z) - log_gamma(1.0 - z);
  }
  const cplx w = z - 1.0;
  cplx x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (w + static_cast<double>(i));
  const cplx t = w + kLanczosG + 0.5;
  return 0.5 * std::log(kTwoPi) + (w + 0.5) * std::log(t) - t + std::log(x);
}

cplx gamma(cplx z) { return checked(std::exp(log_gamma(z)), "gamma"); }

double digamma(double x) {
  if (!(x > 0.0)) throw Error(ErrorKind::InvalidArgument, "digamma needs x > 0");
  double acc = 0.0;
  while (x < 16.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // Asymptotic series with Bernoulli coefficients B_2k/(2k).
  const double series =
      inv2 * (1.0 / 12 - inv2 * (1.0 / 120 - inv2 * (1.0 / 252 - inv2 * (1.0 / 240 - inv2 / 132))));
  return acc + std::log(x) - 0.5 * inv - series;
}

}  // namespace fzeta
