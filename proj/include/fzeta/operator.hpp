#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "fzeta/parallel.hpp"
#include "fzeta/types.hpp"

namespace fzeta {

/// A function on the uniform grid t_i = t_min + i step, i = 0..n-1, viewed as
/// an element of the weighted space H_c with norm (int |f|^2 e^{-2ct} dt)^{1/2}.
class SampledFunction {
 public:
  SampledFunction(double t_min, double t_max, double step, double c, std::vector<cplx> values);

  /// Samples fn on the grid with n = floor((t_max - t_min)/step) + 1 points.
  static SampledFunction sample(double t_min, double t_max, double step, double c,
                                const std::function<cplx(double)>& fn);
  static std::size_t grid_size(double t_min, double t_max, double step);

  double t_min() const noexcept { return t_min_; }
  double t_max() const noexcept { return t_max_; }
  double step() const noexcept { return step_; }
  double c() const noexcept { return c_; }
  std::size_t size() const noexcept { return values_.size(); }
  double t(std::size_t i) const noexcept { return t_min_ + static_cast<double>(i) * step_; }
  const std::vector<cplx>& values() const noexcept { return values_; }

  /// |f(t)| e^{-ct} at both grid ends is below threshold.
  bool boundary_decay(double threshold = 1e-12) const;

  SampledFunction with_values(std::vector<cplx> values) const;

 private:
  double t_min_, t_max_, step_, c_;
  std::vector<cplx> values_;
};

/// Composite trapezoid approximation of the H_c norm.
double hc_norm(const SampledFunction& f);

/// u -> f(u - t) on the same window, zero entering from the left. Shifts by a
/// whole number of steps move samples; other shifts interpolate with an
/// eight-point Lagrange stencil.
SampledFunction shift(const SampledFunction& f, double t);

/// sum_{n=1}^{n_max} f(. - log n).
SampledFunction apply_spectral_operator(const SampledFunction& f, std::int64_t n_max, Exec exec = Exec::Parallel);

/// Same with n_max the least N for which ||f||_c sum_{n>N} n^{-c} <= tail_tol.
/// Throws DivergentTail when c <= 1.
SampledFunction apply_spectral_operator_tol(const SampledFunction& f, double tail_tol, Exec exec = Exec::Parallel);

/// Least N with sum_{n>N} n^{-c} <= budget (integral bound N^{1-c}/(c-1)).
std::int64_t spectral_terms_for_tail(double c, double budget);

/// sum_{m=0}^{m_max} f(. - m log p).
SampledFunction apply_euler_factor(const SampledFunction& f, std::int64_t p, std::int64_t m_max,
                                   Exec exec = Exec::Parallel);

enum class Cutoff { Clamp, Arctan };

/// phi^{(T)}(d_c): clamp for c != 1, (2T/pi) arctan for c = 1.
class TruncatedShift {
 public:
  TruncatedShift(double c, double T, Cutoff cutoff);
  static TruncatedShift standard(double c, double T);

  double c() const noexcept { return c_; }
  double T() const noexcept { return T_; }
  Cutoff cutoff() const noexcept { return cutoff_; }
  double cut(double tau) const;

 private:
  double c_, T_;
  Cutoff cutoff_;
};

struct SpectralSegment {
  double c;
  double tau_lo;
  double tau_hi;

  bool contains(const SpectralSegment& other) const {
    return c == other.c && tau_lo <= other.tau_lo && other.tau_hi <= tau_hi;
  }
};

SpectralSegment segment_spectrum(const TruncatedShift& shift);

struct NormResult {
  double norm = 0.0;
  double tau_star = 0.0;
  std::int64_t evaluations = 0;
};

struct NormOptions {
  double refine_tol = 1e-8;
  double overflow_guard = 1e8;
  int initial_intervals = 64;
  std::int64_t max_evaluations = 2'000'000;
};

/// sup over |tau| <= T of |psi(c + i tau)|, the norm of psi applied to the
/// truncated shift. Adaptive bisection: an interval's bound is its sampled
/// maximum plus twice the sampled slope times a quarter width, and the interval
/// with the largest bound is split until that bound is within refine_tol of the
/// best sample. Throws UnboundedOnSegment when |psi| exceeds the overflow guard
/// or psi hits a pole.
NormResult op_function_norm(const TruncatedShift& shift, const std::function<cplx(cplx)>& psi,
                            const NormOptions& opts = {});

/// Norms of psi(d^{(T)}) and psi(2c - d^{(T)}), the latter as a sup over the
/// reflected segment.
std::pair<NormResult, NormResult> adjoint_norm_check(const TruncatedShift& shift, const std::function<cplx(cplx)>& psi,
                                                     const NormOptions& opts = {});

struct EigenResult {
  SampledFunction psi;
  double residual;
};

/// psi(t) = e^{(c + i tau) t} e^{-t^2/(2 sigma^2)} and the ratio
/// ||d psi - lambda psi||_c / ||psi||_c with d by centered differences.
/// Throws WindowTooSmall unless the window holds [-6 sigma, 6 sigma].
EigenResult approx_eigenfunction(double c, double tau, double sigma, double t_min, double t_max, double step);

/// zeta(c + i k step) for k = 1..floor(tau_max/step).
std::vector<cplx> zeta_range_sample(double c, double tau_max, double step, const EvalOptions& opts = {},
                                    Exec exec = Exec::Parallel);

/// For each target, the distance to the nearest sample (infinity if none).
std::vector<double> nearest_sample_distances(const std::vector<cplx>& samples, const std::vector<cplx>& targets);

}  // namespace fzeta
