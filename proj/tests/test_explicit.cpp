#include <doctest.h>

#include <cmath>

#include "fzeta/explicit.hpp"
#include "fzeta/zeta.hpp"
#include "frozen_values.hpp"

using namespace fzeta;

namespace {

const double kLog3 = std::log(3.0);
const double kD = std::log(2.0) / std::log(3.0);

}  // namespace

TEST_CASE("Cantor complex dimensions") {
  const auto dims = complex_dimensions(cantor_form(), 2);
  REQUIRE(dims.size() == 5);
  CHECK(dims[0].index == 0);
  CHECK(dims[1].index == -1);
  CHECK(dims[2].index == 1);
  for (const auto& d : dims) {
    CAPTURE(d.index);
    CHECK(std::abs(d.omega - cplx(kD, kTwoPi * d.index / kLog3)) < 1e-14);
    CHECK(std::abs(d.residue - 1.0 / (2.0 * kLog3)) < 1e-15);
    CHECK(std::abs(1.0 - 2.0 * std::exp(-d.omega * kLog3)) < 1e-10);
  }
  CHECK(std::abs(dims[2].omega.imag() - dims[0].omega.imag() - kTwoPi / kLog3) < 1e-10);
  CHECK(std::abs(pole_separation(cantor_form()) - kTwoPi / kLog3) < 1e-14);
}

TEST_CASE("residues agree with contour quadrature") {
  for (const ClosedForm& cf : {cantor_form(), ClosedForm{family::SelfSimilar{2.0, 3.0}}, ClosedForm{family::Harmonic{}},
                               ClosedForm{family::PrimeHarmonic{5}}}) {
    CAPTURE(closed_form_name(cf));
    for (const auto& d : complex_dimensions(cf, 5)) {
      const cplx q = residue_by_quadrature(cf, d);
      CHECK(std::abs(q - d.residue) <= 1e-8 * std::abs(d.residue));
    }
  }
}

TEST_CASE("pole families") {
  const auto h = complex_dimensions(family::Harmonic{}, 10);
  REQUIRE(h.size() == 1);
  CHECK(h[0].omega == cplx(1.0, 0.0));
  CHECK(h[0].residue == cplx(1.0, 0.0));
  const auto p = complex_dimensions(family::PrimeHarmonic{2}, 1);
  REQUIRE(p.size() == 3);
  CHECK(p[1].omega == cplx(0.0, -kTwoPi / std::log(2.0)));
  CHECK(std::abs(p[0].residue - 1.0 / std::log(2.0)) < 1e-15);
  CHECK_THROWS_AS(complex_dimensions(family::MoebiusString{}, 1), Error);
  CHECK_THROWS_AS(complex_dimensions(family::PrimeString{}, 1), Error);
}

TEST_CASE("contour residue of a simple pole") {
  const cplx r = contour_residue([](cplx s) { return 3.0 / (s - 0.5); }, 0.5, 0.1);
  CHECK(std::abs(r - 3.0) < 1e-13);
}

TEST_CASE("density of geometric states") {
  const double res = 1.0 / (2.0 * kLog3);
  CHECK(std::abs(density_geometric_states(cantor_form(), 10.0, 0) - res * std::pow(10.0, kD - 1.0)) < 1e-15);
  const double d50 = density_geometric_states(cantor_form(), 10.0, 50);
  const double d49 = density_geometric_states(cantor_form(), 10.0, 49);
  CHECK(std::abs(d50 - d49) <= 2.0 * res * std::pow(10.0, kD - 1.0) * (1 + 1e-12));
  CHECK_THROWS_AS(density_geometric_states(family::Harmonic{}, 10.0, 0), Error);
}

TEST_CASE("density of spectral states") {
  const double res = 1.0 / (2.0 * kLog3);
  const double x = 10.0;
  const double expected = 1.0 + res * zeta(kD).real() * std::pow(x, kD - 1.0);
  CHECK(std::abs(density_spectral_states(cantor_form(), x, 0) - expected) < 1e-13);
  for (int k = 1; k <= 20; ++k) {
    const auto dims = complex_dimensions(cantor_form(), k);
    double pair = 0.0;
    for (const auto& d : dims) {
      if (std::abs(d.index) == k) pair += std::abs(d.residue * zeta(d.omega)) * std::pow(x, d.omega.real() - 1.0);
    }
    const double diff = density_spectral_states(cantor_form(), x, k) - density_spectral_states(cantor_form(), x, k - 1);
    CAPTURE(k);
    CHECK(std::abs(diff) <= pair * (1 + 1e-12));
  }
}

TEST_CASE("explicit counting at log-midpoints") {
  const auto cs = builtin_string(cantor_form(), 1e3);
  const auto xs = log_midpoints(2.0, 100.0, 20);
  REQUIRE(xs.size() == 20);
  CHECK(std::abs(xs.front() - 2.0 * std::pow(50.0, 0.025)) < 1e-13);
  const auto r10 = compare_explicit_vs_direct(cs, xs, 10);
  const auto r100 = compare_explicit_vs_direct(cs, xs, 100);
  CHECK(std::abs(r10.max_error - frozen::kCantorExplicitMaxError10) < 1e-10);
  CHECK(std::abs(r100.max_error - frozen::kCantorExplicitMaxError100) < 1e-10);
  CHECK(r100.max_error <= 0.2);
  CHECK(r100.max_error <= r10.max_error);
  CHECK(!r100.half_jump_mode);
  const double x = std::sqrt(27.0);
  CHECK(std::abs(counting_from_dimensions(cantor_form(), x, 100, Level::Geometric) - 1.0) < 0.2);
}

TEST_CASE("explicit report edge cases") {
  const auto cs = builtin_string(cantor_form(), 1e3);
  const auto empty = compare_explicit_vs_direct(cs, {}, 10);
  CHECK(empty.rows.empty());
  CHECK(empty.max_error == 0.0);
  const auto at = compare_explicit_vs_direct(cs, {9.0, 20.0}, 10);
  CHECK(at.half_jump_mode);
  CHECK(at.rows[0].at_atom);
  CHECK(!at.rows[1].at_atom);
  CHECK(at.rows[0].direct == 2.0);
}

TEST_CASE("unit string at the spectral level") {
  const double n = counting_from_dimensions(family::Finite{{{1.0, 1.0}}}, 10.0, 0, Level::Spectral);
  CHECK(std::abs(n - 9.5) < 1e-12);
  CHECK(spectral_counting(unit_string(), 10.0) == cplx(9.5, 0.0));
  CHECK_THROWS_AS(counting_from_dimensions(family::PrimeHarmonic{2}, 10.0, 3, Level::Geometric), Error);
}

TEST_CASE("window sums are real") {
  for (double x : {3.5, 10.0, 47.0}) {
    double re = 0.0;
    cplx acc = 0.0;
    for (const auto& d : complex_dimensions(cantor_form(), 30)) {
      const cplx term = d.residue * std::exp((d.omega - 1.0) * std::log(x));
      acc += term;
      re += std::abs(term);
    }
    CHECK(std::abs(acc.imag()) <= 1e-10 * re);
    CHECK(std::abs(acc.real() - density_geometric_states(cantor_form(), x, 30)) < 1e-12);
  }
}
