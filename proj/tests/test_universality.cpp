#include <doctest.h>

#include <cmath>
#include <random>

#include "fzeta/error.hpp"
#include "fzeta/universality.hpp"
#include "fzeta/zeta.hpp"
#include "frozen_values.hpp"

using namespace fzeta;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidArgument;
}

CompactBox tiny_box() { return CompactBox::rectangle(0.74, 0.76, 0.05, 5, 5); }

double triangular(double c) { return 2.0 * std::min(c - 0.6, 0.9 - c); }

}  // namespace

TEST_CASE("box geometry and validation") {
  const auto box = CompactBox::rectangle(0.6, 0.9, 1.0, 4, 3);
  CHECK(box.points().size() == 12);
  CHECK(box.points()[0] == cplx(0.6, -1.0));
  CHECK(box.points()[2] == cplx(0.6, 1.0));
  CHECK(box.points()[11] == cplx(0.9, 1.0));
  const auto fine = box.refined();
  CHECK(fine.grid_c == 7);
  CHECK(fine.grid_t == 5);
  CHECK(kind_of([] { CompactBox::rectangle(0.4, 0.9, 1.0).validate(); }) == ErrorKind::BoxOutsideStrip);
  CHECK(kind_of([] { CompactBox::rectangle(0.6, 1.0, 1.0).validate(); }) == ErrorKind::BoxOutsideStrip);
  auto relaxed = CompactBox::rectangle(1.5, 2.0, 1.0);
  relaxed.strip_guard = false;
  relaxed.validate();
  CHECK(kind_of([] { CompactBox::rectangle(0.6, 0.9, 1.0, 0, 3).validate(); }) == ErrorKind::InvalidArgument);
  auto step = CompactBox::with_profile(0.6, 0.9, [](double c) { return c < 0.75 ? 0.1 : 0.5; }, 16, 8);
  CHECK(kind_of([&] { step.validate(); }) == ErrorKind::ProfileDiscontinuous);
  const auto tri = CompactBox::with_profile(0.6, 0.9, triangular, 31, 9);
  tri.validate();
  CHECK(tri.height(0) == 0.0);
  CHECK(std::abs(tri.height(15) - 0.3) < 1e-12);
}

TEST_CASE("sup distance identities") {
  const auto box = CompactBox::rectangle(0.6, 0.9, 1.0, 8, 8);
  const auto z = BaseFunction::zeta();
  CHECK(sup_distance(TargetFunction::self(), 0.0, box, z) == 0.0);
  for (double a : {0.0, 1.0, 5.0}) {
    const auto g = TargetFunction::expression("translate", [a](cplx s) { return zeta(s + cplx(0.0, a)); });
    CHECK(sup_distance(g, a, box, z) <= grid_tolerance(g, a, box, z));
  }
  const auto one = TargetFunction::constant(1.0);
  const double coarse = sup_distance(one, 3.0, box, z);
  const auto refined = sup_distance_refined(one, 3.0, box, z, 1e-3);
  CHECK(refined.value >= coarse);
  CHECK(refined.last_change < 1e-3);
  CHECK(kind_of([&] { sup_distance_refined(TargetFunction::constant(0.0), 17.5, CompactBox::rectangle(0.6, 0.9, 1.0, 5, 5), z, 1e-15, 2); }) == ErrorKind::ToleranceUnreachable);
}

TEST_CASE("self scan") {
  const auto box = CompactBox::rectangle(0.6, 0.9, 1.0, 8, 8);
  const auto r = scan_continuous(TargetFunction::self(), box, BaseFunction::zeta(), 50.0, 0.05, {0.01, 0.1, 1.0, 1e9});
  CHECK(r.taus.size() == 1001);
  CHECK(r.J[0] == 0.0);
  CHECK(r.J_star == 0.0);
  CHECK(r.tau_star == 0.0);
  CHECK(r.window == 50.0);
  double prev = 0.0;
  for (const auto& [eps, frac] : r.density) {
    CHECK(frac >= 1.0 / r.taus.size());
    CHECK(frac >= prev);
    CHECK(frac <= 1.0);
    prev = frac;
  }
  CHECK(r.density.back().second == 1.0);
  CHECK(density_estimate(r, 1e-300) >= 1.0 / r.taus.size());
  CHECK(density_estimate(r, 1e-300) < 1.0);
  CHECK(kind_of([&] { density_estimate(r, 0.0); }) == ErrorKind::InvalidArgument);
  const auto one = scan_continuous(TargetFunction::constant(1.0), box, BaseFunction::zeta(), 5.0, 0.05, {});
  CHECK(density_estimate(one, 1e-3) == 0.0);
}

TEST_CASE("nonvanishing guard") {
  const auto box = CompactBox::rectangle(0.7, 0.8, 0.05, 3, 3);
  ScanOptions opts;
  opts.require_nonvanishing = true;
  const auto vanishing = TargetFunction::expression("s - 0.75", [](cplx s) { return s - 0.75; });
  CHECK(kind_of([&] { scan_continuous(vanishing, box, BaseFunction::zeta(), 1.0, 0.1, {}, opts); }) ==
        ErrorKind::GuardRejected);
  CHECK_NOTHROW(scan_continuous(TargetFunction::constant(1.0), box, BaseFunction::zeta(), 1.0, 0.1, {}, opts));
  CHECK_NOTHROW(hurwitz_scan(vanishing, 0.3, box, 1.0, 0.1, {}, opts));
}

TEST_CASE("discrete scan matches the continuous scan at shared shifts") {
  const auto box = tiny_box();
  const auto one = TargetFunction::constant(1.0);
  const auto z = BaseFunction::zeta();
  const auto cont = scan_continuous(one, box, z, 20.0, 0.01, {0.5, 1.0});
  const auto disc = scan_discrete(one, box, z, 0.01, 2000, {0.5, 1.0});
  REQUIRE(disc.J.size() == 2000);
  REQUIRE(cont.J.size() == 2001);
  for (std::size_t n = 1; n <= 2000; ++n) REQUIRE(disc.J[n - 1] == cont.J[n]);
  for (const auto& [eps, frac] : disc.density) {
    CHECK(frac >= 0.0);
    CHECK(frac <= 1.0);
  }
  const auto self = scan_discrete(TargetFunction::self(), box, z, 0.7, 50, {});
  CHECK(self.taus[0] == 0.7);
  CHECK(self.J[0] > 0.0);
  CHECK(self.J_star > 0.0);
  const auto back = scan_discrete(one, box, z, -0.01, 10, {});
  CHECK(back.taus[9] == -0.1);
  CHECK(kind_of([&] { scan_discrete(one, box, z, 0.0, 10, {}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("J is Lipschitz in the shift") {
  const auto box = tiny_box();
  const double h = 0.01;
  const auto r = scan_continuous(TargetFunction::constant(1.0), box, BaseFunction::zeta(), 20.0, h, {});
  double L = 0.0;
  const double d = 1e-5;
  for (const double tau : r.taus) {
    for (const cplx& p : box.points()) {
      const cplx s = p + cplx(0.0, tau);
      L = std::max(L, std::abs(zeta(s + cplx(0.0, d)) - zeta(s - cplx(0.0, d))) / (2 * d));
    }
  }
  for (std::size_t k = 0; k + 1 < r.J.size(); ++k) REQUIRE(std::abs(r.J[k + 1] - r.J[k]) <= L * h);
}

TEST_CASE("regression anchors") {
  const auto box = tiny_box();
  const auto disc = scan_discrete(TargetFunction::constant(1.0), box, BaseFunction::zeta(), 0.01, 100000, {});
  CHECK(std::abs(disc.grid_tau_star - frozen::kZetaConst1GridTauStar) < 1e-9);
  CHECK(std::abs(disc.J_star - frozen::kZetaConst1GridJStar) < 1e-9);
  const auto h = hurwitz_scan(TargetFunction::constant(0.5), 1.0 / 3.0, box, 1000.0, 0.01, {});
  CHECK(std::abs(h.J_star - frozen::kHurwitzThirdHalfJStar) < 1e-9);
  CHECK(std::abs(h.tau_star - frozen::kHurwitzThirdHalfTauStar) < 1e-6);
}

TEST_CASE("Hurwitz scans") {
  const auto box = tiny_box();
  const auto one = TargetFunction::constant(1.0);
  const auto h = hurwitz_scan(one, 1.0, box, 10.0, 0.05, {0.5});
  const auto z = scan_continuous(one, box, BaseFunction::zeta(), 10.0, 0.05, {0.5});
  CHECK(h.J == z.J);
  CHECK(!h.notes.empty());
  CHECK(kind_of([&] { hurwitz_scan(one, 1.5, box, 10.0, 0.05, {}); }) == ErrorKind::BadAlpha);
}

TEST_CASE("quantized sup equals the direct sup") {
  const auto z = BaseFunction::zeta();
  const auto self = TargetFunction::self();
  CHECK(quantized_sup(self, 0.0, 0.6, 0.9, 1.0, 16, z).value == 0.0);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 50.0);
  const auto box = CompactBox::rectangle(0.6, 0.9, 1.0, 16, 33);
  for (int i = 0; i < 3; ++i) {
    const double tau = u(rng);
    const double q = quantized_sup(self, tau, 0.6, 0.9, 1.0, 16, z).value;
    const double d = sup_distance(self, tau, box, z);
    CAPTURE(tau);
    CHECK(std::abs(q - d) <= 1e-6 + grid_tolerance(self, tau, box, z));
  }
  const auto line = quantized_sup(self, 7.0, 0.6, 0.9, 0.0, 16, z).value;
  CHECK(line == sup_distance(self, 7.0, CompactBox::rectangle(0.6, 0.9, 0.0, 16, 1), z));
  const auto flat = CompactBox::with_profile(0.6, 0.9, [](double) { return 1.0; }, 16, 33);
  CHECK(quantized_sup_general(self, flat, 7.0, z).value == quantized_sup(self, 7.0, 0.6, 0.9, 1.0, 16, z).value);
}

TEST_CASE("quantized sup with a triangular profile") {
  const auto z = BaseFunction::zeta();
  const auto self = TargetFunction::self();
  const auto tri = CompactBox::with_profile(0.6, 0.9, triangular, 31, 33);
  CHECK(quantized_sup_general(self, tri, 0.0, z).value == 0.0);
  const double q = quantized_sup_general(self, tri, 5.0, z).value;
  const double d = sup_distance(self, 5.0, tri, z);
  CHECK(std::abs(q - d) <= 1e-6 + grid_tolerance(self, 5.0, tri, z));
}

TEST_CASE("Taylor coefficients and translated polynomials") {
  const auto a = taylor_coefficients(2.0, 3);
  const double h = 1e-3;
  const double fd = (-zeta(2.0 + 2 * h).real() + 8 * zeta(2.0 + h).real() - 8 * zeta(2.0 - h).real() +
                     zeta(2.0 - 2 * h).real()) /
                    (12 * h);
  CHECK(std::abs(a[0] - zeta(2.0)) < 1e-12);
  CHECK(std::abs(a[1] - fd) < 1e-8);
  CHECK(std::abs(a[1] - frozen::kZetaPrime2) < 1e-10);

  const auto box = CompactBox::rectangle(0.7, 0.8, 0.05, 5, 5);
  const cplx z0(0.4, 0.1);
  // Cauchy remainder bound on the circle of radius 0.55 about z0, inside the pole distance.
  const double radius = 0.55;
  double M = 0.0;
  for (int k = 0; k < 4096; ++k) M = std::max(M, std::abs(zeta(z0 + std::polar(radius, kTwoPi * k / 4096))));
  double reach = 0.0;
  for (const cplx& p : box.points()) reach = std::max(reach, std::abs(p - z0));
  const double q = reach / radius;
  double prev = 1e300;
  for (int n : {5, 10, 20}) {
    const auto r = taylor_translate_scan(TargetFunction::self(), box, z0, n, 0.0, 0.1, {});
    CAPTURE(n);
    CHECK(r.J[0] < prev);
    CHECK(r.J[0] <= M * std::pow(q, n + 1) / (1.0 - q));
    prev = r.J[0];
  }

  const auto c0 = taylor_translate_scan(TargetFunction::constant(1.0), box, z0, 0, 2.0, 0.5, {});
  for (std::size_t k = 0; k < c0.taus.size(); ++k) {
    CHECK(std::abs(c0.J[k] - std::abs(1.0 - zeta(z0 + cplx(0.0, c0.taus[k])))) < 1e-10);
  }
  CHECK(kind_of([&] { taylor_translate_scan(TargetFunction::self(), box, cplx(0.9, 0.0), 5, 1.0, 0.5, {}); }) ==
        ErrorKind::RadiusTooSmall);
  CHECK_THROWS(taylor_coefficients(2.0, 31));
}

TEST_CASE("almost periods") {
  AlmostPeriodOptions opts;
  opts.range = 200.0;
  const auto r = almost_period_scan(BaseFunction::zeta(), 1.5, 2.0, 1.0, 0.1, 50.0, opts);
  REQUIRE(r.windows.size() == 4);
  REQUIRE(!r.windows[0].finds.empty());
  CHECK(r.windows[0].finds[0] == 0.0);
  const auto none = almost_period_scan(BaseFunction::zeta(), 1.5, 2.0, 1.0, 1e-6, 50.0, opts);
  CHECK(none.empty_windows == std::vector<std::size_t>{1, 2, 3});
  CHECK(none.windows[0].finds.front() == 0.0);
}
