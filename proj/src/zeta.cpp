#include "fzeta/zeta.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "fzeta/arith.hpp"
#include "fzeta/gamma.hpp"

namespace fzeta {

namespace {

// B_{2k} / (2k)! for k = 1..9.
constexpr std::array<double, 9> kBernoulliOverFactorial = {
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
    43867.0 / 798.0 / 6402373705728000.0,
};

constexpr double kRoundoff = 4.0 * std::numeric_limits<double>::epsilon();

struct TailWithBound {
  cplx tail;
  double bound;
};

TailWithBound em_tail(cplx s, double alpha, std::int64_t head) {
  constexpr int M = kBernoulliCorrections;
  const double a = static_cast<double>(head) + alpha;
  const double la = std::log(a);
  cplx tail = std::exp((1.0 - s) * la) / (s - 1.0) + 0.5 * std::exp(-s * la);
  cplx rising = s;  // (s)_{2k-1}
  cplx power = std::exp(-(s + 1.0) * la);
  for (int k = 1; k <= M; ++k) {
    tail += kBernoulliOverFactorial[k - 1] * rising * power;
    rising *= (s + (2.0 * k - 1.0)) * (s + 2.0 * k);
    power /= a * a;
  }
  const double omitted = std::abs(kBernoulliOverFactorial[M] * rising * power);
  const double denom = s.real() + 2.0 * M + 1.0;
  double bound = std::numeric_limits<double>::infinity();
  if (denom > 0.0) bound = 2.0 * omitted * std::max(1.0, std::abs(s + (2.0 * M + 1.0)) / denom);
  return {tail, bound};
}

// Rough bound on sum_{n<N} |(n+alpha)^{-s}|, used only for the rounding allowance.
double head_abs_sum(double sigma, double alpha, std::int64_t head) {
  const double a = static_cast<double>(head) + alpha;
  const double first = std::pow(alpha, -sigma);
  if (std::abs(1.0 - sigma) < 1e-12) return first + std::log(a / alpha);
  return first + std::abs((std::pow(a, 1.0 - sigma) - std::pow(alpha, 1.0 - sigma)) / (1.0 - sigma)) +
         std::pow(a, -sigma);
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw Error(ErrorKind::BadAlpha, "alpha must lie in (0, 1]");
}

Estimate hurwitz_em(cplx s, double alpha, const EvalOptions& opts) {
  const EulerMaclaurinPlan plan = plan_euler_maclaurin(s, alpha, opts);
  cplx head = 0.0;
  for (std::int64_t n = plan.head_terms - 1; n >= 0; --n) {
    head += std::exp(-s * std::log(static_cast<double>(n) + alpha));
  }
  const TailWithBound t = em_tail(s, alpha, plan.head_terms);
  // Each term carries the rounding of its phase, |s| log(n + alpha) ulps.
  const double phase = 1.0 + std::abs(s) * std::log(static_cast<double>(plan.head_terms) + alpha);
  const double rounding = kRoundoff * phase * head_abs_sum(s.real(), alpha, plan.head_terms);
  return {checked(head + t.tail, "hurwitz_zeta"), t.bound + rounding};
}

}  // namespace

double euler_maclaurin_bound(cplx s, double alpha, std::int64_t head_terms) {
  return em_tail(s, alpha, head_terms).bound;
}

cplx euler_maclaurin_tail(cplx s, double alpha, std::int64_t head_terms) {
  return em_tail(s, alpha, head_terms).tail;
}

EulerMaclaurinPlan plan_euler_maclaurin(cplx s, double alpha, const EvalOptions& opts) {
  opts.validate();
  auto head = static_cast<std::int64_t>(10.0 + std::ceil(std::abs(s.imag()) / kTwoPi));
  while (true) {
    if (head > opts.max_terms) {
      throw Error(ErrorKind::ToleranceUnreachable, "Euler-Maclaurin remainder exceeds abs_tol within max_terms");
    }
    const double bound = euler_maclaurin_bound(s, alpha, head);
    if (bound <= opts.abs_tol) return {head, bound};
    if (!std::isfinite(bound) && s.real() + 2.0 * kBernoulliCorrections + 1.0 <= 0.0) {
      throw Error(ErrorKind::ToleranceUnreachable, "Re(s) too negative for the Euler-Maclaurin remainder");
    }
    head = static_cast<std::int64_t>(std::ceil(static_cast<double>(head) * 1.25)) + 1;
  }
}

Estimate hurwitz_estimate(cplx s, double alpha, const EvalOptions& opts) {
  check_alpha(alpha);
  if (s == cplx(1.0, 0.0)) throw Error(ErrorKind::PoleAtOne, "Hurwitz zeta has a simple pole at s = 1");
  return hurwitz_em(s, alpha, opts);
}

cplx hurwitz_zeta(cplx s, double alpha, const EvalOptions& opts) { return hurwitz_estimate(s, alpha, opts).value; }

Estimate zeta_estimate(cplx s, const EvalOptions& opts) {
  if (s == cplx(1.0, 0.0)) throw Error(ErrorKind::PoleAtOne, "zeta has a simple pole at s = 1");
  if (s.real() >= 0.0) return hurwitz_em(s, 1.0, opts);

  // Trivial zeros.
  if (s.imag() == 0.0 && std::fmod(s.real(), 2.0) == 0.0) return {cplx(0.0, 0.0), 0.0};

  // zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s)
  const cplx reflected = 1.0 - s;
  const Estimate inner = hurwitz_em(reflected, 1.0, opts);
  const cplx log_factor = s * std::log(2.0) + (s - 1.0) * std::log(kPi) +
                          log_sin_pi(0.5 * s) + log_gamma(reflected);
  const cplx factor = std::exp(log_factor);
  const cplx value = checked(factor * inner.value, "zeta");
  return {value, std::abs(factor) * inner.error_bound + kRoundoff * std::abs(value) * 8.0};
}

cplx zeta(cplx s, const EvalOptions& opts) { return zeta_estimate(s, opts).value; }

cplx completed_xi(cplx s, const EvalOptions& opts) {
  if (s == cplx(0.0, 0.0)) throw Error(ErrorKind::PoleAtZero, "xi has a simple pole at s = 0");
  if (s == cplx(1.0, 0.0)) throw Error(ErrorKind::PoleAtOne, "xi has a simple pole at s = 1");
  // Near a trivial zero -2n the Gamma pole cancels the zero of zeta; the finite
  // limit equals xi(1 - s) by the functional equation.
  if (s.real() < -1.0 && std::abs(s.imag()) < 1e-8) {
    const double n = std::round(-s.real() / 2.0);
    if (n >= 1.0 && std::abs(s + 2.0 * n) < 1e-8) return completed_xi(1.0 - s, opts);
  }
  const cplx log_prefactor = -0.5 * s * std::log(kPi) + log_gamma(0.5 * s);
  return checked(std::exp(log_prefactor) * zeta(s, opts), "completed_xi");
}

cplx euler_product_truncated(cplx s, std::int64_t n_max) {
  if (n_max < 1) throw Error(ErrorKind::InvalidArgument, "n_max must be >= 1");
  cplx product = 1.0;
  for (std::int64_t p : primes_up_to(n_max)) {
    const cplx denom = 1.0 - std::exp(-s * std::log(static_cast<double>(p)));
    if (std::abs(denom) < 1e-15) throw Error(ErrorKind::FactorSingular, "1 - p^{-s} vanishes at p = " + std::to_string(p));
    product /= denom;
  }
  return checked(product, "euler_product_truncated");
}

cplx zeta_derivative(cplx s, double h, const EvalOptions& opts) {
  const cplx f2 = zeta(s + 2.0 * h, opts);
  const cplx f1 = zeta(s + h, opts);
  const cplx m1 = zeta(s - h, opts);
  const cplx m2 = zeta(s - 2.0 * h, opts);
  return (-f2 + 8.0 * f1 - 8.0 * m1 + m2) / (12.0 * h);
}

DirichletCharacter DirichletCharacter::from_values(std::int64_t modulus, std::vector<cplx> values) {
  if (modulus < 1) throw Error(ErrorKind::InvalidArgument, "character modulus must be >= 1");
  if (static_cast<std::int64_t>(values.size()) != modulus) {
    throw Error(ErrorKind::InvalidArgument, "character table must have exactly q entries");
  }
  constexpr double tol = 1e-12;
  bool principal = true;
  for (std::int64_t n = 0; n < modulus; ++n) {
    const bool unit = gcd(n, modulus) == 1;
    const cplx v = values[n];
    if (!unit && v != cplx(0.0, 0.0)) {
      throw Error(ErrorKind::InvalidArgument, "character must vanish at n = " + std::to_string(n));
    }
    if (unit && std::abs(std::abs(v) - 1.0) > tol) {
      throw Error(ErrorKind::InvalidArgument, "character value at a unit must be a root of unity");
    }
    if (unit && std::abs(v - 1.0) > tol) principal = false;
  }
  for (std::int64_t a = 0; a < modulus; ++a) {
    if (gcd(a, modulus) != 1) continue;
    for (std::int64_t b = 0; b < modulus; ++b) {
      if (gcd(b, modulus) != 1) continue;
      if (std::abs(values[(a * b) % modulus] - values[a] * values[b]) > tol) {
        throw Error(ErrorKind::InvalidArgument, "character table is not multiplicative");
      }
    }
  }
  return DirichletCharacter(modulus, std::move(values), principal);
}

DirichletCharacter DirichletCharacter::principal(std::int64_t modulus) {
  if (modulus < 1) throw Error(ErrorKind::InvalidArgument, "character modulus must be >= 1");
  std::vector<cplx> v(static_cast<std::size_t>(modulus));
  for (std::int64_t n = 0; n < modulus; ++n) v[n] = gcd(n, modulus) == 1 ? 1.0 : 0.0;
  return DirichletCharacter(modulus, std::move(v), true);
}

DirichletCharacter DirichletCharacter::chi4() { return from_values(4, {0.0, 1.0, 0.0, -1.0}); }

cplx DirichletCharacter::operator()(std::int64_t n) const {
  std::int64_t r = n % modulus_;
  if (r < 0) r += modulus_;
  return values_[static_cast<std::size_t>(r)];
}

cplx dirichlet_l(cplx s, const DirichletCharacter& chi, const EvalOptions& opts) {
  const std::int64_t q = chi.modulus();
  if (q == 1) return zeta(s, opts);
  const double qd = static_cast<double>(q);
  if (s == cplx(1.0, 0.0)) {
    if (chi.is_principal()) throw Error(ErrorKind::PoleAtOne, "L(s, chi_0) has a pole at s = 1");
    // L(1, chi) = -(1/q) sum chi(a) psi(a/q) for non-principal chi.
    cplx acc = 0.0;
    for (std::int64_t a = 1; a <= q; ++a) {
      const cplx c = chi(a);
      if (c != cplx(0.0, 0.0)) acc -= c * digamma(static_cast<double>(a) / qd);
    }
    return acc / qd;
  }
  EvalOptions inner = opts;
  const cplx scale = std::exp(-s * std::log(qd));
  inner.abs_tol = opts.abs_tol / (qd * std::max(1.0, std::abs(scale)));
  cplx acc = 0.0;
  for (std::int64_t a = 1; a <= q; ++a) {
    const cplx c = chi(a);
    if (c == cplx(0.0, 0.0)) continue;
    acc += c * hurwitz_zeta(s, static_cast<double>(a) / qd, inner);
  }
  return checked(scale * acc, "dirichlet_l");
}

cplx inverse_zeta_series(cplx s, std::int64_t n_max) {
  if (n_max < 1) throw Error(ErrorKind::InvalidArgument, "n_max must be >= 1");
  const std::vector<std::int8_t> mu = mobius_table(n_max);
  cplx acc = 0.0;
  for (std::int64_t j = n_max; j >= 1; --j) {
    if (mu[j] == 0) continue;
    acc += static_cast<double>(mu[j]) * std::exp(-s * std::log(static_cast<double>(j)));
  }
  return checked(acc, "inverse_zeta_series");
}

}  // namespace fzeta
