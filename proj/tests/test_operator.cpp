#include <doctest.h>

#include <cmath>

#include "fzeta/arith.hpp"
#include "fzeta/error.hpp"
#include "fzeta/operator.hpp"
#include "fzeta/zeta.hpp"

using namespace fzeta;

namespace {

SampledFunction gaussian(double c, double step = 1e-3, double t_min = -40.0, double t_max = 40.0) {
  return SampledFunction::sample(t_min, t_max, step, c, [](double t) { return cplx(std::exp(-t * t / 2.0), 0.0); });
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidArgument;
}

double max_abs_diff(const SampledFunction& a, const SampledFunction& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
  return m;
}

double dense_sup(const std::function<cplx(cplx)>& psi, double c, double T, int n) {
  double best = 0.0;
  for (int i = 0; i <= n; ++i) best = std::max(best, std::abs(psi(cplx(c, -T + 2.0 * T * i / n))));
  return best;
}

}  // namespace

TEST_CASE("sampled function grid") {
  const auto f = gaussian(0.0, 0.5, -1.0, 1.2);
  CHECK(f.size() == 5);
  CHECK(SampledFunction::grid_size(0.0, 1.0, 0.1) == 11);
  CHECK(f.boundary_decay(0.7));
  CHECK(!f.boundary_decay(0.5));
  CHECK(kind_of([] { SampledFunction(0.0, 1.0, 0.5, 0.0, {1.0}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("H_c norm") {
  const auto zero = SampledFunction::sample(-1, 1, 0.01, 0.5, [](double) { return cplx(0.0); });
  CHECK(hc_norm(zero) == 0.0);
  const double step = 1e-3;
  const auto bump = SampledFunction::sample(-2, 3, step, 0.0, [](double t) { return cplx(t >= 0 && t <= 1 ? 1.0 : 0.0); });
  CHECK(std::abs(hc_norm(bump) - 1.0) <= step);
  const auto f = gaussian(1.0);
  std::vector<cplx> twice(f.values());
  for (auto& v : twice) v *= 2.0;
  CHECK(hc_norm(f.with_values(twice)) == 2.0 * hc_norm(f));
  // int e^{-t^2} e^{-2t} dt = sqrt(pi) e
  CHECK(std::abs(hc_norm(f) - std::sqrt(std::sqrt(kPi) * std::exp(1.0))) < 1e-12);
}

TEST_CASE("shift semigroup") {
  const auto f = gaussian(1.0, 0.0625);
  CHECK(shift(f, 0.0).values() == f.values());
  CHECK(shift(shift(f, 0.25), 0.5).values() == shift(f, 0.75).values());
  const auto g = shift(f, 0.25);
  CHECK(g.values()[0] == cplx(0.0));
  CHECK(g.values()[4] == f.values()[0]);
  CHECK(kind_of([&] { shift(f, -1.0); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("translation scales the norm by e^{-ct}") {
  for (double c : {0.5, 1.0, 2.0}) {
    const auto f = gaussian(c);
    const double n = hc_norm(f);
    for (double t : {0.1, 1.0, std::log(2.0)}) {
      CAPTURE(c);
      CAPTURE(t);
      CHECK(std::abs(hc_norm(shift(f, t)) - std::exp(-c * t) * n) <= 1e-6 * n);
    }
  }
  const auto f = gaussian(1.0);
  CHECK(std::abs(hc_norm(shift(f, std::log(2.0))) / hc_norm(f) - 0.5) < 1e-6);
}

TEST_CASE("spectral operator") {
  const auto f = gaussian(2.0, 0.01);
  CHECK(apply_spectral_operator(f, 1).values() == f.values());
  const auto a = apply_spectral_operator_tol(f, 1e-2);
  CHECK(hc_norm(a) <= zeta(2.0).real() * hc_norm(f) * (1 + 1e-6));
  CHECK(apply_spectral_operator(f, 50, Exec::Serial).values() == apply_spectral_operator(f, 50, Exec::Parallel).values());
  CHECK(kind_of([] { apply_spectral_operator_tol(gaussian(1.0, 0.1), 1e-3); }) == ErrorKind::DivergentTail);
  CHECK(kind_of([] { spectral_terms_for_tail(0.5, 1e-3); }) == ErrorKind::DivergentTail);
  CHECK(spectral_terms_for_tail(2.0, 1e-3) == 1000);
}

TEST_CASE("spectral operator on exponentials") {
  const cplx s(2.0, 3.0);
  const int N = 20;
  const auto f = SampledFunction::sample(-5.0, 10.0, 0.01, 2.0, [&](double t) { return std::exp(s * t); });
  const auto a = apply_spectral_operator(f, N);
  cplx partial = 0.0;
  for (int n = 1; n <= N; ++n) partial += std::exp(-s * std::log(static_cast<double>(n)));
  for (std::size_t i = 0; i < f.size(); i += 37) {
    if (f.t(i) < -5.0 + std::log(static_cast<double>(N)) + 0.1) continue;
    CAPTURE(f.t(i));
    CHECK(std::abs(a.values()[i] - f.values()[i] * partial) <= 1e-9 * std::abs(f.values()[i]));
  }
}

TEST_CASE("Euler factors") {
  const auto f = gaussian(2.0, 0.01);
  CHECK(apply_euler_factor(f, 5, 0).values() == f.values());
  const int M = 6;
  const auto composed = apply_euler_factor(apply_euler_factor(f, 2, M), 3, M);
  std::vector<cplx> direct(f.size(), 0.0);
  for (int a = 0; a <= M; ++a) {
    for (int b = 0; b <= M; ++b) {
      const auto g = shift(shift(f, a * std::log(2.0)), b * std::log(3.0));
      for (std::size_t i = 0; i < f.size(); ++i) direct[i] += g.values()[i];
    }
  }
  CHECK(max_abs_diff(composed, f.with_values(direct)) < 1e-12);
  CHECK(kind_of([&] { apply_euler_factor(f, 4, 1); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("Euler products approach the spectral operator") {
  const auto f = gaussian(2.0, 0.01);
  const auto target = apply_spectral_operator(f, 3000);
  double prev = 1e300;
  for (std::int64_t P : {5, 30, 100}) {
    SampledFunction acc = f;
    for (std::int64_t p = 2; p <= P; ++p) {
      if (!is_prime(p)) continue;
      acc = apply_euler_factor(acc, p, static_cast<std::int64_t>(80.0 / std::log(static_cast<double>(p))));
    }
    std::vector<cplx> d(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) d[i] = acc.values()[i] - target.values()[i];
    const double gap = hc_norm(f.with_values(d));
    CAPTURE(P);
    CHECK(gap < prev);
    prev = gap;
  }
}

TEST_CASE("truncated shift and spectral segments") {
  const auto seg = segment_spectrum(TruncatedShift::standard(0.75, 2.0));
  CHECK(seg.c == 0.75);
  CHECK(seg.tau_lo == -2.0);
  CHECK(seg.tau_hi == 2.0);
  const auto point = segment_spectrum(TruncatedShift::standard(0.75, 0.0));
  CHECK(point.tau_lo == point.tau_hi);
  for (double T : {0.0, 0.5, 1.0, 3.0}) {
    CHECK(segment_spectrum(TruncatedShift::standard(0.75, 3.0)).contains(segment_spectrum(TruncatedShift::standard(0.75, T))));
  }
  CHECK(!segment_spectrum(TruncatedShift::standard(0.75, 1.0)).contains(seg));
  CHECK(TruncatedShift::standard(1.0, 2.0).cutoff() == Cutoff::Arctan);
  CHECK(TruncatedShift::standard(0.5, 2.0).cutoff() == Cutoff::Clamp);
  CHECK(TruncatedShift::standard(0.5, 2.0).cut(5.0) == 2.0);
  CHECK(TruncatedShift::standard(0.5, 2.0).cut(-5.0) == -2.0);
  CHECK(std::abs(TruncatedShift::standard(1.0, 2.0).cut(1.0) - 1.0) < 1e-15);
  CHECK(kind_of([] { TruncatedShift(0.5, 1.0, Cutoff::Arctan); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { TruncatedShift(1.0, 1.0, Cutoff::Clamp); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("functional calculus norms") {
  const auto identity = [](cplx s) { return s; };
  const auto z = [](cplx s) { return zeta(s); };
  const auto poly = [](cplx s) { return s * s - 2.0 * s + 3.0; };
  const auto r = op_function_norm(TruncatedShift::standard(3.0, 4.0), identity);
  CHECK(std::abs(r.norm - 5.0) < 1e-8);
  CHECK(std::abs(std::abs(r.tau_star) - 4.0) < 1e-12);
  for (double T : {1.0, 10.0, 50.0}) {
    const auto r2 = op_function_norm(TruncatedShift::standard(2.0, T), z);
    CHECK(std::abs(r2.norm - zeta(2.0).real()) < 1e-8);
    CHECK(std::abs(r2.tau_star) < 1e-3);
  }
  CHECK(kind_of([&] { op_function_norm(TruncatedShift::standard(1.0, 1.0), z); }) == ErrorKind::UnboundedOnSegment);
  struct Case {
    std::function<cplx(cplx)> psi;
    double c, T;
  };
  for (const auto& k : {Case{identity, 0.75, 3.0}, Case{z, 0.75, 3.0}, Case{poly, 0.6, 2.0}}) {
    const double got = op_function_norm(TruncatedShift::standard(k.c, k.T), k.psi).norm;
    CHECK(std::abs(got - dense_sup(k.psi, k.c, k.T, 1'000'000)) < 1e-8);
  }
}

TEST_CASE("adjoint norms") {
  const auto z = [](cplx s) { return zeta(s); };
  const auto [a, b] = adjoint_norm_check(TruncatedShift::standard(0.75, 3.0), z);
  CHECK(std::abs(a.norm - b.norm) < 1e-8);
  const auto [i1, i2] = adjoint_norm_check(TruncatedShift::standard(3.0, 4.0), [](cplx s) { return s; });
  CHECK(std::abs(i1.norm - 5.0) < 1e-8);
  CHECK(std::abs(i2.norm - 5.0) < 1e-8);
  const auto [p1, p2] = adjoint_norm_check(TruncatedShift::standard(0.75, 0.0), z);
  CHECK(p1.norm == std::abs(zeta(0.75)));
  CHECK(p2.norm == std::abs(zeta(0.75)));
}

TEST_CASE("approximate eigenfunctions") {
  for (double sigma : {10.0, 20.0, 40.0}) {
    for (double c : {0.5, 0.75}) {
      for (double tau : {0.0, 5.0}) {
        const double window = 6.0 * sigma;
        const auto r = approx_eigenfunction(c, tau, sigma, -window, window, 1e-3);
        CAPTURE(sigma);
        CAPTURE(c);
        CAPTURE(tau);
        CHECK(std::abs(r.residual * sigma * std::sqrt(2.0) - 1.0) < 0.02);
      }
    }
  }
  const double r10 = approx_eigenfunction(0.75, 0.0, 10.0, -60, 60, 1e-3).residual;
  const double r20 = approx_eigenfunction(0.75, 0.0, 20.0, -120, 120, 1e-3).residual;
  CHECK(r20 / r10 >= 0.49);
  CHECK(r20 / r10 <= 0.51);
  const double r10t = approx_eigenfunction(0.75, 3.0, 10.0, -60, 60, 1e-3).residual;
  CHECK(std::abs(r10t / r10 - 1.0) < 0.01);
  CHECK(kind_of([] { approx_eigenfunction(0.75, 0.0, 10.0, -50, 60, 1e-3); }) == ErrorKind::WindowTooSmall);
}

TEST_CASE("range of zeta on vertical lines") {
  const auto disk = zeta_range_sample(2.0, 2000.0, 0.05);
  CHECK(disk.size() == 40000);
  const double radius = zeta(2.0).real() - 1.0;
  for (const cplx& v : disk) REQUIRE(std::abs(v - 1.0) <= radius);
  const std::vector<cplx> targets{0.0, cplx(2.0, 2.0), -3.0};
  const auto d500 = nearest_sample_distances(zeta_range_sample(0.75, 500.0, 0.05), targets);
  const auto d5000 = nearest_sample_distances(zeta_range_sample(0.75, 5000.0, 0.05), targets);
  for (std::size_t i = 0; i < targets.size(); ++i) CHECK(d5000[i] <= d500[i]);
  CHECK(zeta_range_sample(0.75, 0.01, 0.05).empty());
  CHECK(nearest_sample_distances({}, targets)[0] == std::numeric_limits<double>::infinity());
}
