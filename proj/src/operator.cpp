#include "fzeta/operator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>

#include "fzeta/arith.hpp"
#include "fzeta/shift_kernel.hpp"
#include "fzeta/zeta.hpp"

namespace fzeta {

namespace {

constexpr int kStencil = 8;
constexpr int kStencilLow = -3;

// Moves samples by `offset` indices, or interpolates at position i - offset - 1 + x.
struct Stencil {
  std::ptrdiff_t offset = 0;
  bool exact = true;
  std::array<double, kStencil> w{};
};

Stencil make_stencil(double shift_by, double step) {
  const double q = shift_by / step;
  const double k = std::round(q);
  Stencil st;
  if (std::abs(q - k) <= 1e-9 * std::max(1.0, std::abs(q))) {
    st.offset = static_cast<std::ptrdiff_t>(k);
    return st;
  }
  const double kf = std::floor(q);
  const double x = 1.0 - (q - kf);
  st.exact = false;
  st.offset = static_cast<std::ptrdiff_t>(kf);
  for (int m = 0; m < kStencil; ++m) {
    double w = 1.0;
    for (int j = 0; j < kStencil; ++j)
      if (j != m) w *= (x - (j + kStencilLow)) / static_cast<double>(m - j);
    st.w[m] = w;
  }
  return st;
}

cplx stencil_value(const std::vector<cplx>& v, const Stencil& st, std::ptrdiff_t i) {
  const auto n = static_cast<std::ptrdiff_t>(v.size());
  if (st.exact) {
    const std::ptrdiff_t j = i - st.offset;
    return (j >= 0 && j < n) ? v[j] : cplx(0.0, 0.0);
  }
  const std::ptrdiff_t base = i - st.offset - 1 + kStencilLow;
  cplx acc = 0.0;
  for (int m = 0; m < kStencil; ++m) {
    const std::ptrdiff_t j = base + m;
    if (j >= 0 && j < n) acc += st.w[m] * v[j];
  }
  return acc;
}

// out[i] = sum over shifts (in order) of f(t_i - shift).
SampledFunction shifted_sum(const SampledFunction& f, const std::vector<double>& shifts, Exec exec) {
  std::vector<Stencil> stencils;
  stencils.reserve(shifts.size());
  for (double d : shifts) stencils.push_back(make_stencil(d, f.step()));
  const auto& v = f.values();
  const auto n = static_cast<std::ptrdiff_t>(v.size());
  std::vector<cplx> out(v.size());
  auto row = [&](std::ptrdiff_t i) {
    cplx acc = 0.0;
    for (const Stencil& st : stencils) acc += stencil_value(v, st, i);
    out[i] = acc;
  };
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) row(i);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) row(i);
  }
  return f.with_values(std::move(out));
}

// Trapezoid sum of |v_i|^2 e^{-2 c t_i} over i in [lo, hi].
double weighted_energy(const SampledFunction& f, const std::vector<cplx>& v, std::size_t lo, std::size_t hi) {
  if (hi <= lo) return 0.0;
  double acc = 0.0;
  for (std::size_t i = lo; i <= hi; ++i) {
    const double w = (i == lo || i == hi) ? 0.5 : 1.0;
    acc += w * std::norm(v[i]) * std::exp(-2.0 * f.c() * f.t(i));
  }
  return acc * f.step();
}

}  // namespace

std::size_t SampledFunction::grid_size(double t_min, double t_max, double step) {
  if (!(step > 0.0) || !(t_max >= t_min)) throw Error(ErrorKind::InvalidArgument, "grid needs step > 0 and t_max >= t_min");
  return static_cast<std::size_t>(std::floor((t_max - t_min) / step + 1e-9)) + 1;
}

SampledFunction::SampledFunction(double t_min, double t_max, double step, double c, std::vector<cplx> values)
    : t_min_(t_min), t_max_(t_max), step_(step), c_(c), values_(std::move(values)) {
  if (!(c >= 0.0)) throw Error(ErrorKind::InvalidArgument, "weight parameter c must be nonnegative");
  if (values_.size() != grid_size(t_min, t_max, step)) {
    throw Error(ErrorKind::InvalidArgument, "sample count does not match the grid");
  }
}

SampledFunction SampledFunction::sample(double t_min, double t_max, double step, double c,
                                        const std::function<cplx(double)>& fn) {
  const std::size_t n = grid_size(t_min, t_max, step);
  std::vector<cplx> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = fn(t_min + static_cast<double>(i) * step);
  return SampledFunction(t_min, t_max, step, c, std::move(v));
}

bool SampledFunction::boundary_decay(double threshold) const {
  const double lo = std::abs(values_.front()) * std::exp(-c_ * t(0));
  const double hi = std::abs(values_.back()) * std::exp(-c_ * t(size() - 1));
  return lo < threshold && hi < threshold;
}

SampledFunction SampledFunction::with_values(std::vector<cplx> values) const {
  return SampledFunction(t_min_, t_max_, step_, c_, std::move(values));
}

double hc_norm(const SampledFunction& f) { return std::sqrt(weighted_energy(f, f.values(), 0, f.size() - 1)); }

SampledFunction shift(const SampledFunction& f, double t) {
  if (!(t >= 0.0)) throw Error(ErrorKind::InvalidArgument, "shift amount must be nonnegative");
  return shifted_sum(f, {t}, Exec::Serial);
}

SampledFunction apply_spectral_operator(const SampledFunction& f, std::int64_t n_max, Exec exec) {
  if (n_max < 1) throw Error(ErrorKind::InvalidArgument, "n_max must be positive");
  std::vector<double> shifts;
  shifts.reserve(static_cast<std::size_t>(n_max));
  for (std::int64_t n = 1; n <= n_max; ++n) shifts.push_back(std::log(static_cast<double>(n)));
  return shifted_sum(f, shifts, exec);
}

std::int64_t spectral_terms_for_tail(double c, double budget) {
  if (!(c > 1.0)) throw Error(ErrorKind::DivergentTail, "sum of n^{-c} diverges for c <= 1");
  if (!(budget > 0.0)) throw Error(ErrorKind::InvalidArgument, "tail budget must be positive");
  const double n = std::ceil(std::pow(budget * (c - 1.0), 1.0 / (1.0 - c)));
  if (!(n < 1e9)) throw Error(ErrorKind::ToleranceUnreachable, "tail tolerance needs too many terms");
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(n));
}

SampledFunction apply_spectral_operator_tol(const SampledFunction& f, double tail_tol, Exec exec) {
  if (!(f.c() > 1.0)) throw Error(ErrorKind::DivergentTail, "tail tolerance needs c > 1; pass n_max instead");
  const double norm = hc_norm(f);
  if (norm == 0.0) return apply_spectral_operator(f, 1, exec);
  return apply_spectral_operator(f, spectral_terms_for_tail(f.c(), tail_tol / norm), exec);
}

SampledFunction apply_euler_factor(const SampledFunction& f, std::int64_t p, std::int64_t m_max, Exec exec) {
  if (!is_prime(p)) throw Error(ErrorKind::InvalidArgument, "Euler factor needs a prime");
  if (m_max < 0) throw Error(ErrorKind::InvalidArgument, "m_max must be nonnegative");
  std::vector<double> shifts;
  const double lp = std::log(static_cast<double>(p));
  for (std::int64_t m = 0; m <= m_max; ++m) shifts.push_back(static_cast<double>(m) * lp);
  return shifted_sum(f, shifts, exec);
}

TruncatedShift::TruncatedShift(double c, double T, Cutoff cutoff) : c_(c), T_(T), cutoff_(cutoff) {
  if (!(c >= 0.0) || !(T >= 0.0)) throw Error(ErrorKind::InvalidArgument, "truncated shift needs c >= 0 and T >= 0");
  if ((cutoff == Cutoff::Arctan) != (c == 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "arctan cutoff is used exactly when c = 1, clamp otherwise");
  }
}

TruncatedShift TruncatedShift::standard(double c, double T) {
  return TruncatedShift(c, T, c == 1.0 ? Cutoff::Arctan : Cutoff::Clamp);
}

double TruncatedShift::cut(double tau) const {
  if (cutoff_ == Cutoff::Clamp) return std::clamp(tau, -T_, T_);
  return 2.0 * T_ / kPi * std::atan(tau);
}

SpectralSegment segment_spectrum(const TruncatedShift& shift) { return {shift.c(), -shift.T(), shift.T()}; }

NormResult op_function_norm(const TruncatedShift& shift, const std::function<cplx(cplx)>& psi,
                            const NormOptions& opts) {
  if (!(opts.refine_tol > 0.0) || opts.initial_intervals < 1) {
    throw Error(ErrorKind::InvalidArgument, "norm refinement needs refine_tol > 0");
  }
  NormResult res;
  const double c = shift.c();
  auto eval = [&](double tau) {
    ++res.evaluations;
    cplx v;
    try {
      v = psi(cplx(c, tau));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::PoleAtOne || e.kind() == ErrorKind::PoleHit || e.kind() == ErrorKind::Overflow) {
        throw Error(ErrorKind::UnboundedOnSegment, "function has a pole on the spectral segment");
      }
      throw;
    }
    const double a = std::abs(v);
    if (!std::isfinite(a) || a > opts.overflow_guard) {
      throw Error(ErrorKind::UnboundedOnSegment, "function exceeds the overflow guard on the spectral segment");
    }
    if (a > res.norm || res.evaluations == 1) {
      res.norm = a;
      res.tau_star = tau;
    }
    return a;
  };

  const double T = shift.T();
  if (T == 0.0) {
    eval(0.0);
    return res;
  }

  struct Interval {
    double a, b, fa, fm, fb, bound;
  };
  auto make = [](double a, double b, double fa, double fm, double fb) {
    const double half = 0.5 * (b - a);
    const double slope = std::max(std::abs(fm - fa), std::abs(fb - fm)) / half;
    return Interval{a, b, fa, fm, fb, std::max({fa, fm, fb}) + 2.0 * slope * 0.5 * half};
  };
  auto worse = [](const Interval& x, const Interval& y) {
    return x.bound != y.bound ? x.bound < y.bound : x.a > y.a;
  };
  std::priority_queue<Interval, std::vector<Interval>, decltype(worse)> queue(worse);

  const int n = opts.initial_intervals;
  const double h = 2.0 * T / n;
  std::vector<double> nodes(n + 1), vals(n + 1);
  for (int j = 0; j <= n; ++j) nodes[j] = j == n ? T : -T + j * h;
  for (int j = 0; j <= n; ++j) vals[j] = eval(nodes[j]);
  for (int j = 0; j < n; ++j) {
    const double m = 0.5 * (nodes[j] + nodes[j + 1]);
    queue.push(make(nodes[j], nodes[j + 1], vals[j], eval(m), vals[j + 1]));
  }
  while (!queue.empty()) {
    const Interval top = queue.top();
    if (top.bound - res.norm <= opts.refine_tol) break;
    if (res.evaluations > opts.max_evaluations) {
      throw Error(ErrorKind::ToleranceUnreachable, "norm refinement exceeded its evaluation budget");
    }
    queue.pop();
    const double m = 0.5 * (top.a + top.b);
    const double q1 = eval(0.5 * (top.a + m));
    const double q2 = eval(0.5 * (m + top.b));
    queue.push(make(top.a, m, top.fa, q1, top.fm));
    queue.push(make(m, top.b, top.fm, q2, top.fb));
  }
  return res;
}

std::pair<NormResult, NormResult> adjoint_norm_check(const TruncatedShift& shift, const std::function<cplx(cplx)>& psi,
                                                     const NormOptions& opts) {
  const double c = shift.c();
  NormResult direct = op_function_norm(shift, psi, opts);
  NormResult reflected = op_function_norm(shift, [&](cplx s) { return psi(2.0 * c - s); }, opts);
  return {direct, reflected};
}

EigenResult approx_eigenfunction(double c, double tau, double sigma, double t_min, double t_max, double step) {
  if (!(sigma > 0.0)) throw Error(ErrorKind::InvalidArgument, "sigma must be positive");
  if (t_min > -6.0 * sigma || t_max < 6.0 * sigma) {
    throw Error(ErrorKind::WindowTooSmall, "window must contain [-6 sigma, 6 sigma]");
  }
  const cplx lambda(c, tau);
  SampledFunction psi = SampledFunction::sample(t_min, t_max, step, c, [&](double t) {
    return std::exp(lambda * t - t * t / (2.0 * sigma * sigma));
  });
  const auto& v = psi.values();
  std::vector<cplx> r(v.size(), 0.0);
  for (std::size_t i = 1; i + 1 < v.size(); ++i) r[i] = (v[i + 1] - v[i - 1]) / (2.0 * step) - lambda * v[i];
  const double num = std::sqrt(weighted_energy(psi, r, 1, v.size() - 2));
  const double den = hc_norm(psi);
  return {std::move(psi), num / den};
}

std::vector<cplx> zeta_range_sample(double c, double tau_max, double step, const EvalOptions& opts, Exec exec) {
  if (!(step > 0.0)) throw Error(ErrorKind::InvalidArgument, "step must be positive");
  if (!(tau_max >= step)) return {};
  const auto count = static_cast<std::int64_t>(std::floor(tau_max / step + 1e-9));
  const cplx point(c, 0.0);
  return evaluate_shift_grid(BaseFunction::zeta(), std::span<const cplx>(&point, 1), ShiftGrid{step, 1, count}, opts,
                             exec);
}

std::vector<double> nearest_sample_distances(const std::vector<cplx>& samples, const std::vector<cplx>& targets) {
  std::vector<double> out;
  for (const cplx& z : targets) {
    double best = std::numeric_limits<double>::infinity();
    for (const cplx& w : samples) best = std::min(best, std::abs(w - z));
    out.push_back(best);
  }
  return out;
}

}  // namespace fzeta
