#pragma once

#include <functional>
#include <vector>

#include "fzeta/strings.hpp"

namespace fzeta {

/// A simple pole omega of a geometric zeta function and its residue.
struct ComplexDimension {
  cplx omega;
  cplx residue;
  int index = 0;  // k in the periodic family, 0 for isolated poles
};

/// Poles with |k| <= k_max, ordered by ascending |k| with -k before k.
/// Residues come from the closed form. Throws UnsupportedKind for families
/// whose poles are not located (Moebius, prime string).
std::vector<ComplexDimension> complex_dimensions(const ClosedForm& cf, int k_max);

/// Distance from omega to the nearest other pole of the family.
double pole_separation(const ClosedForm& cf);

/// (1/2 pi i) times the integral of f over the circle |s - center| = radius,
/// by the trapezoid rule with n nodes.
cplx contour_residue(const std::function<cplx(cplx)>& f, cplx center, double radius, int n = 64);

/// Residue of the closed form at a dimension by contour quadrature on a circle
/// of radius min(1e-2, half the pole separation).
cplx residue_by_quadrature(const ClosedForm& cf, const ComplexDimension& d);

/// Re sum res x^{omega-1} over the window.
double density_geometric_states(const ClosedForm& cf, double x, int k_max);

/// zeta_eta(1) + Re sum res zeta(omega) x^{omega-1} over the window.
double density_spectral_states(const ClosedForm& cf, double x, int k_max, const EvalOptions& opts = {});

enum class Level { Geometric, Spectral };

/// Truncated explicit formula for N_eta(x) (geometric) or N_nu(x) (spectral):
/// the residues of zeta_eta(s) x^s / s (times zeta(s) at the spectral level)
/// at the dimensions in the window, at s = 0, and at s = 1 for the spectral level.
double counting_from_dimensions(const ClosedForm& cf, double x, int k_max, Level level,
                                const EvalOptions& opts = {});

struct ExplicitRow {
  double x;
  double direct;
  double explicit_value;
  double error;
  bool at_atom;  // x is a jump point, so direct uses the half-jump value
};

struct ExplicitReport {
  std::vector<ExplicitRow> rows;
  double max_error = 0.0;
  double mean_error = 0.0;
  bool half_jump_mode = false;
};

ExplicitReport compare_explicit_vs_direct(const GeneralizedString& eta, const std::vector<double>& xs, int k_max,
                                          Level level = Level::Geometric, const EvalOptions& opts = {});

/// n points lo (hi/lo)^{(i + 1/2)/n}, the log-scale cell midpoints of [lo, hi].
std::vector<double> log_midpoints(double lo, double hi, int n);

}  // namespace fzeta
