#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fzeta/operator.hpp"
#include "fzeta/shift_kernel.hpp"

namespace fzeta {

/// Grid over [c_lo, c_hi] x [-T(c), T(c)], with T(c) = t0 or a sampled profile.
struct CompactBox {
  double c_lo = 0.6;
  double c_hi = 0.9;
  double t0 = 1.0;
  int grid_c = 64;
  int grid_t = 64;
  std::vector<double> profile;  // T at each c node when non-empty
  bool strip_guard = true;      // require 1/2 < c_lo <= c_hi < 1
  double max_profile_jump = 0.1;

  static CompactBox rectangle(double c_lo, double c_hi, double t0, int grid_c = 64, int grid_t = 64);
  static CompactBox with_profile(double c_lo, double c_hi, const std::function<double(double)>& height,
                                 int grid_c = 64, int grid_t = 64);

  double c_node(int j) const;
  double height(int j) const;
  double t_node(int j, int i) const;
  /// Nodes ordered by c column, then t.
  std::vector<cplx> points() const;
  /// Throws BoxOutsideStrip, ProfileDiscontinuous or InvalidArgument.
  void validate() const;
  /// Same box with every grid spacing halved.
  CompactBox refined() const;
};

/// A target g on a box: the base function itself, a formula, or fixed samples
/// at the box nodes.
class TargetFunction {
 public:
  enum class Kind { Self, Expression, Samples };

  static TargetFunction self();
  static TargetFunction expression(std::string name, std::function<cplx(cplx)> fn);
  static TargetFunction constant(cplx value);
  static TargetFunction samples(std::string name, std::vector<cplx> values);

  Kind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  cplx at(const BaseFunction& base, cplx s, const EvalOptions& opts = {}) const;
  /// Values at the box nodes; for Self these come from the shift kernel at
  /// tau = 0 on a grid of the given step, so they match a scan bit for bit.
  std::vector<cplx> on_box(const BaseFunction& base, const CompactBox& box, double step, const EvalOptions& opts,
                           Exec exec) const;

 private:
  TargetFunction(Kind k, std::string name) : kind_(k), name_(std::move(name)) {}
  Kind kind_;
  std::string name_;
  std::function<cplx(cplx)> fn_;
  std::vector<cplx> samples_;
};

struct ScanResult {
  std::string base;
  std::string target;
  double tau_step = 0.0;
  std::vector<double> taus;
  std::vector<double> J;
  double tau_star = 0.0;
  double J_star = 0.0;
  double grid_tau_star = 0.0;
  double grid_J_star = 0.0;
  std::vector<std::pair<double, double>> density;  // (eps, fraction)
  double window = 0.0;                             // length of the scanned tau range
  std::vector<std::string> notes;
};

struct ScanOptions {
  EvalOptions eval{};
  Exec exec = Exec::Parallel;
  bool polish = true;
  int max_polish = 16;
  double polish_tol = 1e-11;
  bool require_nonvanishing = false;
};

/// max over box nodes of |g(s) - base(s + i tau)|, by direct evaluation.
double sup_distance(const TargetFunction& g, double tau, const CompactBox& box, const BaseFunction& base,
                    const EvalOptions& opts = {});

struct RefinedSup {
  double value;
  int rounds;
  double last_change;
};

/// Halves the grid spacing until the sup changes by less than tol.
RefinedSup sup_distance_refined(const TargetFunction& g, double tau, const CompactBox& box, const BaseFunction& base,
                                double tol, int max_rounds = 6, const EvalOptions& opts = {});

/// max over nodes of ||phi(next t node)| - |phi(t node)|| with phi = g - base(. + i tau),
/// plus the evaluation allowance 2 abs_tol for the two values in each J term.
double grid_tolerance(const TargetFunction& g, double tau, const CompactBox& box, const BaseFunction& base,
                      const EvalOptions& opts = {});

/// J on tau_k = k step, 0 <= k <= tau_max/step, followed by golden-section
/// polish of grid minima below twice the grid minimum.
ScanResult scan_continuous(const TargetFunction& g, const CompactBox& box, const BaseFunction& base, double tau_max,
                           double tau_step, const std::vector<double>& eps_list, const ScanOptions& opts = {});

/// J on tau = n delta, 1 <= n <= n_max; density counts J < eps over n_max.
ScanResult scan_discrete(const TargetFunction& g, const CompactBox& box, const BaseFunction& base, double delta,
                         std::int64_t n_max, const std::vector<double>& eps_list, const ScanOptions& opts = {});

/// Fraction of scanned shifts with J <= eps.
double density_estimate(const ScanResult& result, double eps);

struct QuantizedResult {
  double value = 0.0;
  double c_star = 0.0;
  double tau_star = 0.0;  // location on the segment
};

/// max over the c nodes of ||phi(d_c^{(T0)})||, phi(s) = g(s) - base(s + i tau).
QuantizedResult quantized_sup(const TargetFunction& g, double tau, double c_lo, double c_hi, double T0, int grid_c,
                              const BaseFunction& base, const NormOptions& norm = {}, const EvalOptions& opts = {});

/// Same with the segment height T(c) taken from the box profile.
QuantizedResult quantized_sup_general(const TargetFunction& g, const CompactBox& box, double tau,
                                      const BaseFunction& base, const NormOptions& norm = {},
                                      const EvalOptions& opts = {});

/// scan_continuous with base hurwitz(alpha) and no nonvanishing requirement.
ScanResult hurwitz_scan(const TargetFunction& g, double alpha, const CompactBox& box, double tau_max, double tau_step,
                        const std::vector<double>& eps_list, const ScanOptions& opts = {});

/// Taylor coefficients a_0..a_n of zeta at w by a 128-point Cauchy integral on
/// the circle of radius |w - 1|/2.
std::vector<cplx> taylor_coefficients(cplx w, int n, const EvalOptions& opts = {});

/// Scans sup_box |g(z) - sum_k a_k(z0 + i tau) (z - z0)^k|.
ScanResult taylor_translate_scan(const TargetFunction& g, const CompactBox& box, cplx z0, int n, double tau_max,
                                 double tau_step, const std::vector<double>& eps_list, const ScanOptions& opts = {});

struct AlmostPeriodWindow {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> finds;  // shifts with sup |f(s + i tau) - f(s)| < eps
  double best_tau = 0.0;
  double best_J = 0.0;
};

struct AlmostPeriodResult {
  std::vector<AlmostPeriodWindow> windows;
  std::vector<std::size_t> empty_windows;
  double lipschitz = -1.0;  // bound on |dJ/dtau| used to refine cells, negative if none
  std::int64_t refined_cells = 0;
};

struct AlmostPeriodOptions {
  double range = 1e4;
  double tau_step = 0.05;
  int grid_x = 3;
  int grid_y = 5;
  int max_depth = 24;
  ScanOptions scan{};
};

/// Searches each window [j ell, (j+1) ell) of [0, range] for eps-translation
/// numbers of base on [alpha, beta] x [-y_window, y_window]. Grid cells whose
/// Lipschitz lower bound dips below eps are bisected with direct evaluation.
AlmostPeriodResult almost_period_scan(const BaseFunction& base, double alpha, double beta, double y_window,
                                      double eps, double ell, const AlmostPeriodOptions& opts = {});

}  // namespace fzeta
