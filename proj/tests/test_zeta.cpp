#include <doctest.h>

#include <cmath>

#include "fzeta/arith.hpp"
#include "fzeta/gamma.hpp"
#include "fzeta/zeta.hpp"
#include "frozen_values.hpp"

using namespace fzeta;

namespace {

double rel_err(cplx got, cplx want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

}  // namespace

TEST_CASE("zeta matches high-precision reference values") {
  for (const auto& p : frozen::kZeta) {
    CAPTURE(p.s);
    CHECK(rel_err(zeta(p.s), p.value) < 1e-11);
  }
}

TEST_CASE("zeta error estimate covers the actual error") {
  for (const auto& p : frozen::kZeta) {
    if (p.s.real() < 0.0) continue;
    const Estimate e = zeta_estimate(p.s);
    CAPTURE(p.s);
    CHECK(std::abs(e.value - p.value) <= e.error_bound + 1e-14 * std::abs(p.value));
  }
}

TEST_CASE("zeta special values") {
  CHECK(std::abs(zeta(2.0) - kPi * kPi / 6.0) < 1e-14);
  CHECK(std::abs(zeta(4.0) - std::pow(kPi, 4) / 90.0) < 1e-14);
  CHECK(std::abs(zeta(0.0) + 0.5) < 1e-14);
  CHECK(std::abs(zeta(-1.0) + 1.0 / 12.0) < 1e-14);
  CHECK(zeta(-2.0) == cplx(0.0, 0.0));
  CHECK(zeta(-4.0) == cplx(0.0, 0.0));
}

TEST_CASE("zeta is conjugate symmetric") {
  const cplx s(0.7, 37.5);
  CHECK(std::abs(zeta(std::conj(s)) - std::conj(zeta(s))) < 1e-13);
}

TEST_CASE("zeta pole and options") {
  CHECK_THROWS_AS(zeta(1.0), Error);
  try {
    zeta(1.0);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PoleAtOne);
  }
  EvalOptions bad;
  bad.abs_tol = 0.0;
  CHECK_THROWS_AS(bad.validate(), Error);
  EvalOptions tight;
  tight.max_terms = 20;
  try {
    zeta(cplx(0.5, 1e4), tight);
    FAIL("expected ToleranceUnreachable");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ToleranceUnreachable);
  }
}

TEST_CASE("Euler-Maclaurin head length grows with height and tolerance") {
  const auto low = plan_euler_maclaurin(cplx(0.75, 10.0), 1.0, {});
  const auto high = plan_euler_maclaurin(cplx(0.75, 1000.0), 1.0, {});
  CHECK(high.head_terms > low.head_terms);
  EvalOptions loose;
  loose.abs_tol = 1e-6;
  CHECK(plan_euler_maclaurin(cplx(0.75, 1000.0), 1.0, loose).head_terms <= high.head_terms);
  CHECK(high.remainder_bound <= 1e-13);
}

TEST_CASE("Hurwitz zeta matches references") {
  for (const auto& p : frozen::kHurwitz) {
    CAPTURE(p.s);
    CAPTURE(p.alpha);
    CHECK(rel_err(hurwitz_zeta(p.s, p.alpha), p.value) < 1e-11);
  }
  CHECK(hurwitz_zeta(cplx(0.3, 4.0), 1.0) == zeta(cplx(0.3, 4.0)));
}

TEST_CASE("Hurwitz zeta rejects bad alpha and the pole") {
  for (double a : {0.0, -0.5, 1.5}) {
    try {
      hurwitz_zeta(2.0, a);
      FAIL("expected BadAlpha");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::BadAlpha);
    }
  }
  CHECK_THROWS_AS(hurwitz_zeta(1.0, 0.5), Error);
}

TEST_CASE("Hurwitz multiplication identity zeta(s,1/2) = (2^s - 1) zeta(s)") {
  for (cplx s : {cplx(2.0, 0.0), cplx(0.6, 15.0), cplx(3.0, -2.0)}) {
    const cplx want = (std::pow(cplx(2.0, 0.0), s) - 1.0) * zeta(s);
    CHECK(rel_err(hurwitz_zeta(s, 0.5), want) < 1e-12);
  }
}

TEST_CASE("Dirichlet L for chi mod 4") {
  const auto chi = DirichletCharacter::chi4();
  CHECK(!chi.is_principal());
  for (const auto& p : frozen::kChi4) {
    CAPTURE(p.s);
    CHECK(rel_err(dirichlet_l(p.s, chi), p.value) < 1e-11);
  }
}

TEST_CASE("principal character L-function relates to zeta") {
  // L(s, chi_0 mod 3) = (1 - 3^{-s}) zeta(s)
  const auto chi = DirichletCharacter::principal(3);
  CHECK(chi.is_principal());
  const cplx s(2.5, 3.0);
  CHECK(rel_err(dirichlet_l(s, chi), (1.0 - std::pow(cplx(3.0, 0.0), -s)) * zeta(s)) < 1e-12);
  CHECK_THROWS_AS(dirichlet_l(1.0, chi), Error);
  CHECK(dirichlet_l(s, DirichletCharacter::principal(1)) == zeta(s));
}

TEST_CASE("character validation") {
  CHECK_THROWS_AS(DirichletCharacter::from_values(4, {0.0, 1.0, 1.0, -1.0}), Error);  // nonzero off units
  CHECK_THROWS_AS(DirichletCharacter::from_values(5, {0.0, 1.0, 2.0, 1.0, 1.0}), Error);  // not unimodular
  CHECK_THROWS_AS(DirichletCharacter::from_values(3, {0.0, 1.0}), Error);
  const auto chi = DirichletCharacter::chi4();
  CHECK(chi(7) == cplx(-1.0, 0.0));
  CHECK(chi(9) == cplx(1.0, 0.0));
  CHECK(chi(-1) == cplx(-1.0, 0.0));
}

TEST_CASE("completed zeta") {
  for (const auto& p : frozen::kXi) {
    CAPTURE(p.s);
    CHECK(rel_err(completed_xi(p.s), p.value) < 1e-11);
  }
  CHECK_THROWS_AS(completed_xi(0.0), Error);
  CHECK_THROWS_AS(completed_xi(1.0), Error);
  // finite limit at a trivial zero: xi(-2) = xi(3)
  CHECK(rel_err(completed_xi(-2.0), completed_xi(3.0)) < 1e-13);
}

TEST_CASE("Gamma and digamma") {
  for (const auto& p : frozen::kLogGammaExp) {
    CAPTURE(p.s);
    CHECK(rel_err(std::exp(log_gamma(p.s)), p.value) / std::max(1.0, 1.0 / std::abs(p.value)) < 1e-12);
  }
  CHECK(std::abs(fzeta::gamma(5.0) - 24.0) < 1e-12);
  CHECK(std::abs(fzeta::gamma(0.5) - std::sqrt(kPi)) < 1e-14);
  CHECK(std::abs(digamma(0.25) - frozen::kDigammaQuarter) < 1e-13);
  CHECK(std::abs(digamma(1.0) + 0.57721566490153286) < 1e-14);
  CHECK_THROWS_AS(log_gamma(-3.0), Error);
}

TEST_CASE("zeta derivative") {
  CHECK(std::abs(zeta_derivative(2.0).real() - frozen::kZetaPrime2) < 1e-9);
  CHECK(std::abs(zeta_derivative(1.5).real() - frozen::kZetaPrime15) < 1e-9);
}

TEST_CASE("Euler product") {
  const double z2 = kPi * kPi / 6.0;
  CHECK(euler_product_truncated(2.0, 1) == cplx(1.0, 0.0));
  CHECK(std::abs(euler_product_truncated(2.0, 2) - 4.0 / 3.0) < 1e-15);
  CHECK(std::abs(euler_product_truncated(2.0, 100000) - z2) < 1e-5);
  CHECK_THROWS_AS(euler_product_truncated(2.0, 0), Error);
  // 1 - 2^{-s} = 0 at s = 2 pi i / log 2
  try {
    euler_product_truncated(cplx(0.0, kTwoPi / std::log(2.0)), 10);
    FAIL("expected FactorSingular");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::FactorSingular);
  }
}

TEST_CASE("Moebius series approaches 1/zeta") {
  CHECK(std::abs(inverse_zeta_series(2.0, 100000) - 6.0 / (kPi * kPi)) < 1e-4);
  CHECK(inverse_zeta_series(2.0, 1) == cplx(1.0, 0.0));
}

TEST_CASE("arithmetic helpers") {
  CHECK(primes_up_to(30) == std::vector<std::int64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
  const auto mu = mobius_table(12);
  CHECK(std::vector<int>(mu.begin() + 1, mu.end()) == std::vector<int>{1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0});
  CHECK(is_prime(97));
  CHECK(!is_prime(91));
  CHECK(gcd(12, 18) == 6);
}
