#include "fzeta/universality.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <sstream>

namespace fzeta {

namespace {

constexpr double kGolden = 0.6180339887498949;

std::int64_t grid_last_index(double tau_max, double step) {
  if (!(step > 0.0)) throw Error(ErrorKind::InvalidArgument, "tau step must be positive");
  if (!(tau_max >= 0.0)) throw Error(ErrorKind::InvalidArgument, "tau range must be nonnegative");
  return static_cast<std::int64_t>(std::floor(tau_max / step + 1e-9));
}

// J_k = max_j |g_j - f(p_j + i tau_k)| for absolute indices first..first+count-1,
// evaluated in chunks aligned to kernel blocks.
std::vector<double> sup_over_grid(const BaseFunction& base, const std::vector<cplx>& pts, const std::vector<cplx>& g,
                                  double step, std::int64_t first, std::int64_t count, const ScanOptions& opts) {
  std::vector<double> J(static_cast<std::size_t>(std::max<std::int64_t>(count, 0)));
  constexpr std::int64_t kChunk = 32 * kShiftBlock;
  const std::int64_t end = first + count;
  std::int64_t k = first;
  while (k < end) {
    std::int64_t stop = (k >= 0 ? (k / kChunk + 1) * kChunk : -((-k - 1) / kChunk) * kChunk);
    stop = std::min(stop, end);
    const auto vals = evaluate_shift_grid(base, pts, ShiftGrid{step, k, stop - k}, opts.eval, opts.exec);
    for (std::int64_t r = 0; r < stop - k; ++r) {
      double m = 0.0;
      for (std::size_t j = 0; j < pts.size(); ++j)
        m = std::max(m, std::abs(g[j] - vals[static_cast<std::size_t>(r) * pts.size() + j]));
      J[static_cast<std::size_t>(k - first + r)] = m;
    }
    k = stop;
  }
  return J;
}

double direct_sup(const std::vector<cplx>& pts, const std::vector<cplx>& g, const BaseFunction& base, double tau,
                  const EvalOptions& opts) {
  double m = 0.0;
  for (std::size_t j = 0; j < pts.size(); ++j) m = std::max(m, std::abs(g[j] - base(pts[j] + cplx(0.0, tau), opts)));
  return m;
}

std::vector<cplx> direct_target(const TargetFunction& g, const CompactBox& box, const BaseFunction& base,
                                const EvalOptions& opts) {
  const auto pts = box.points();
  if (g.kind() == TargetFunction::Kind::Samples) return g.on_box(base, box, 1.0, opts, Exec::Serial);
  std::vector<cplx> out;
  out.reserve(pts.size());
  for (const cplx& s : pts) out.push_back(g.at(base, s, opts));
  return out;
}

std::pair<double, double> golden_section(const std::function<double(double)>& f, double a, double b, double tol) {
  double x1 = b - kGolden * (b - a);
  double x2 = a + kGolden * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

void fill_stars(ScanResult& r) {
  const auto it = std::min_element(r.J.begin(), r.J.end());
  if (it == r.J.end()) throw Error(ErrorKind::InvalidArgument, "empty shift grid");
  const auto k = static_cast<std::size_t>(it - r.J.begin());
  r.grid_J_star = r.J_star = *it;
  r.grid_tau_star = r.tau_star = r.taus[k];
}

void polish(ScanResult& r, const std::function<double(double)>& J, const ScanOptions& opts) {
  const double star = r.grid_J_star;
  const std::size_t n = r.J.size();
  std::vector<std::size_t> cand;
  for (std::size_t k = 0; k < n; ++k) {
    const double left = k > 0 ? r.J[k - 1] : std::numeric_limits<double>::infinity();
    const double right = k + 1 < n ? r.J[k + 1] : std::numeric_limits<double>::infinity();
    if (r.J[k] <= left && r.J[k] <= right && r.J[k] < 2.0 * star) cand.push_back(k);
  }
  std::sort(cand.begin(), cand.end(), [&](std::size_t a, std::size_t b) {
    return r.J[a] != r.J[b] ? r.J[a] < r.J[b] : a < b;
  });
  if (cand.size() > static_cast<std::size_t>(opts.max_polish)) cand.resize(static_cast<std::size_t>(opts.max_polish));
  for (std::size_t k : cand) {
    const double a = r.taus[k > 0 ? k - 1 : 0];
    const double b = r.taus[std::min(k + 1, n - 1)];
    if (!(b > a)) continue;
    const auto [t, v] = golden_section(J, a, b, opts.polish_tol);
    if (v < r.J_star) {
      r.J_star = v;
      r.tau_star = t;
    }
  }
}

void fill_density(ScanResult& r, const std::vector<double>& eps_list, bool strict) {
  for (double eps : eps_list) {
    if (!(eps > 0.0)) throw Error(ErrorKind::InvalidArgument, "density threshold must be positive");
    const auto hits = std::count_if(r.J.begin(), r.J.end(), [&](double j) { return strict ? j < eps : j <= eps; });
    r.density.emplace_back(eps, static_cast<double>(hits) / static_cast<double>(r.J.size()));
  }
}

}  // namespace

CompactBox CompactBox::rectangle(double c_lo, double c_hi, double t0, int grid_c, int grid_t) {
  CompactBox b;
  b.c_lo = c_lo;
  b.c_hi = c_hi;
  b.t0 = t0;
  b.grid_c = grid_c;
  b.grid_t = grid_t;
  return b;
}

CompactBox CompactBox::with_profile(double c_lo, double c_hi, const std::function<double(double)>& height, int grid_c,
                                    int grid_t) {
  CompactBox b = rectangle(c_lo, c_hi, 0.0, grid_c, grid_t);
  for (int j = 0; j < grid_c; ++j) b.profile.push_back(height(b.c_node(j)));
  b.t0 = b.profile.empty() ? 0.0 : *std::max_element(b.profile.begin(), b.profile.end());
  return b;
}

double CompactBox::c_node(int j) const { return grid_c == 1 ? c_lo : c_lo + (c_hi - c_lo) * j / (grid_c - 1); }

double CompactBox::height(int j) const { return profile.empty() ? t0 : profile[static_cast<std::size_t>(j)]; }

double CompactBox::t_node(int j, int i) const {
  const double h = height(j);
  return grid_t == 1 ? 0.0 : -h + 2.0 * h * i / (grid_t - 1);
}

std::vector<cplx> CompactBox::points() const {
  std::vector<cplx> pts;
  pts.reserve(static_cast<std::size_t>(grid_c) * static_cast<std::size_t>(grid_t));
  for (int j = 0; j < grid_c; ++j)
    for (int i = 0; i < grid_t; ++i) pts.emplace_back(c_node(j), t_node(j, i));
  return pts;
}

void CompactBox::validate() const {
  if (grid_c < 1 || grid_t < 1) throw Error(ErrorKind::InvalidArgument, "box grid needs at least one node per axis");
  if (!(c_lo <= c_hi) || !(t0 >= 0.0) || !std::isfinite(c_hi) || !std::isfinite(t0)) {
    throw Error(ErrorKind::InvalidArgument, "box needs c_lo <= c_hi and t0 >= 0");
  }
  if (strip_guard && !(c_lo > 0.5 && c_hi < 1.0)) {
    throw Error(ErrorKind::BoxOutsideStrip, "box must lie in the strip 1/2 < Re(s) < 1");
  }
  if (!profile.empty()) {
    if (profile.size() != static_cast<std::size_t>(grid_c)) {
      throw Error(ErrorKind::InvalidArgument, "profile needs one height per c node");
    }
    for (std::size_t j = 0; j < profile.size(); ++j) {
      if (!(profile[j] >= 0.0) || !std::isfinite(profile[j])) {
        throw Error(ErrorKind::InvalidArgument, "profile heights must be finite and nonnegative");
      }
      if (j > 0 && std::abs(profile[j] - profile[j - 1]) > max_profile_jump) {
        std::ostringstream os;
        os << "profile jumps by " << std::abs(profile[j] - profile[j - 1]) << " between adjacent c nodes";
        throw Error(ErrorKind::ProfileDiscontinuous, os.str());
      }
    }
  }
}

CompactBox CompactBox::refined() const {
  CompactBox b = *this;
  b.grid_c = grid_c == 1 ? 1 : 2 * grid_c - 1;
  b.grid_t = grid_t == 1 ? 1 : 2 * grid_t - 1;
  if (!profile.empty() && grid_c > 1) {
    b.profile.clear();
    for (std::size_t j = 0; j < profile.size(); ++j) {
      b.profile.push_back(profile[j]);
      if (j + 1 < profile.size()) b.profile.push_back(0.5 * (profile[j] + profile[j + 1]));
    }
  }
  return b;
}

TargetFunction TargetFunction::self() { return TargetFunction(Kind::Self, "self"); }

TargetFunction TargetFunction::expression(std::string name, std::function<cplx(cplx)> fn) {
  TargetFunction t(Kind::Expression, std::move(name));
  t.fn_ = std::move(fn);
  return t;
}

TargetFunction TargetFunction::constant(cplx value) {
  std::ostringstream os;
  os.precision(17);
  os << "const:" << value.real();
  if (value.imag() != 0.0) os << (value.imag() < 0 ? "" : "+") << value.imag() << "i";
  return expression(os.str(), [value](cplx) { return value; });
}

TargetFunction TargetFunction::samples(std::string name, std::vector<cplx> values) {
  TargetFunction t(Kind::Samples, std::move(name));
  t.samples_ = std::move(values);
  return t;
}

cplx TargetFunction::at(const BaseFunction& base, cplx s, const EvalOptions& opts) const {
  switch (kind_) {
    case Kind::Self:
      return base(s, opts);
    case Kind::Expression:
      return fn_(s);
    case Kind::Samples:
      break;
  }
  throw Error(ErrorKind::InvalidArgument, "sampled target has no values off its grid");
}

std::vector<cplx> TargetFunction::on_box(const BaseFunction& base, const CompactBox& box, double step,
                                         const EvalOptions& opts, Exec exec) const {
  const auto pts = box.points();
  if (kind_ == Kind::Samples) {
    if (samples_.size() != pts.size()) throw Error(ErrorKind::InvalidArgument, "target samples do not match the box grid");
    return samples_;
  }
  if (kind_ == Kind::Self) return evaluate_shift_grid(base, pts, ShiftGrid{step, 0, 1}, opts, exec);
  std::vector<cplx> out;
  out.reserve(pts.size());
  for (const cplx& s : pts) out.push_back(fn_(s));
  return out;
}

double sup_distance(const TargetFunction& g, double tau, const CompactBox& box, const BaseFunction& base,
                    const EvalOptions& opts) {
  box.validate();
  return direct_sup(box.points(), direct_target(g, box, base, opts), base, tau, opts);
}

RefinedSup sup_distance_refined(const TargetFunction& g, double tau, const CompactBox& box, const BaseFunction& base,
                                double tol, int max_rounds, const EvalOptions& opts) {
  if (g.kind() == TargetFunction::Kind::Samples) {
    throw Error(ErrorKind::InvalidArgument, "grid refinement needs a target defined off the grid");
  }
  CompactBox b = box;
  double prev = sup_distance(g, tau, b, base, opts);
  for (int round = 1; round <= max_rounds; ++round) {
    b = b.refined();
    const double next = sup_distance(g, tau, b, base, opts);
    const double change = std::abs(next - prev);
    if (change < tol) return {next, round, change};
    prev = next;
  }
  throw Error(ErrorKind::ToleranceUnreachable, "grid refinement did not settle within the round limit");
}

double grid_tolerance(const TargetFunction& g, double tau, const CompactBox& box, const BaseFunction& base,
                      const EvalOptions& opts) {
  box.validate();
  const auto pts = box.points();
  const auto gv = direct_target(g, box, base, opts);
  std::vector<double> mag(pts.size());
  for (std::size_t j = 0; j < pts.size(); ++j) mag[j] = std::abs(gv[j] - base(pts[j] + cplx(0.0, tau), opts));
  double tol = 0.0;
  for (int j = 0; j < box.grid_c; ++j)
    for (int i = 0; i + 1 < box.grid_t; ++i) {
      const std::size_t at = static_cast<std::size_t>(j) * box.grid_t + i;
      tol = std::max(tol, std::abs(mag[at + 1] - mag[at]));
    }
  return tol + 2.0 * opts.abs_tol;
}

ScanResult scan_continuous(const TargetFunction& g, const CompactBox& box, const BaseFunction& base, double tau_max,
                           double tau_step, const std::vector<double>& eps_list, const ScanOptions& opts) {
  box.validate();
  const std::int64_t K = grid_last_index(tau_max, tau_step);
  const auto pts = box.points();
  const auto gv = g.on_box(base, box, tau_step, opts.eval, opts.exec);
  ScanResult r;
  r.base = base.name();
  r.target = g.name();
  r.tau_step = tau_step;
  r.window = tau_max;
  if (opts.require_nonvanishing) {
    double m = std::numeric_limits<double>::infinity();
    for (const cplx& v : gv) m = std::min(m, std::abs(v));
    if (!(m > 0.0)) throw Error(ErrorKind::GuardRejected, "target vanishes on the box grid");
    r.notes.push_back("target nonvanishing on the box grid");
  }
  r.J = sup_over_grid(base, pts, gv, tau_step, 0, K + 1, opts);
  r.taus.resize(r.J.size());
  for (std::int64_t k = 0; k <= K; ++k) r.taus[static_cast<std::size_t>(k)] = static_cast<double>(k) * tau_step;
  fill_stars(r);
  if (opts.polish) polish(r, [&](double tau) { return direct_sup(pts, gv, base, tau, opts.eval); }, opts);
  fill_density(r, eps_list, false);
  return r;
}

ScanResult scan_discrete(const TargetFunction& g, const CompactBox& box, const BaseFunction& base, double delta,
                         std::int64_t n_max, const std::vector<double>& eps_list, const ScanOptions& opts) {
  box.validate();
  if (delta == 0.0 || !std::isfinite(delta)) throw Error(ErrorKind::InvalidArgument, "delta must be nonzero");
  if (n_max < 1) throw Error(ErrorKind::InvalidArgument, "n_max must be positive");
  const double step = std::abs(delta);
  const auto pts = box.points();
  const auto gv = g.on_box(base, box, step, opts.eval, opts.exec);
  ScanResult r;
  r.base = base.name();
  r.target = g.name();
  r.tau_step = delta;
  r.window = static_cast<double>(n_max) * step;
  if (opts.require_nonvanishing) {
    double m = std::numeric_limits<double>::infinity();
    for (const cplx& v : gv) m = std::min(m, std::abs(v));
    if (!(m > 0.0)) throw Error(ErrorKind::GuardRejected, "target vanishes on the box grid");
  }
  if (delta > 0.0) {
    r.J = sup_over_grid(base, pts, gv, step, 1, n_max, opts);
  } else {
    r.J = sup_over_grid(base, pts, gv, step, -n_max, n_max, opts);
    std::reverse(r.J.begin(), r.J.end());
  }
  r.taus.resize(r.J.size());
  for (std::int64_t n = 1; n <= n_max; ++n) {
    r.taus[static_cast<std::size_t>(n - 1)] = static_cast<double>(delta > 0 ? n : -n) * step;
  }
  fill_stars(r);
  fill_density(r, eps_list, true);
  return r;
}

double density_estimate(const ScanResult& result, double eps) {
  if (!(eps > 0.0)) throw Error(ErrorKind::InvalidArgument, "density threshold must be positive");
  if (result.J.empty()) return 0.0;
  const auto hits = std::count_if(result.J.begin(), result.J.end(), [&](double j) { return j <= eps; });
  return static_cast<double>(hits) / static_cast<double>(result.J.size());
}

namespace {

QuantizedResult quantized_over(const TargetFunction& g, double tau, const CompactBox& box, const BaseFunction& base,
                               const NormOptions& norm, const EvalOptions& opts) {
  QuantizedResult best;
  bool first = true;
  for (int j = 0; j < box.grid_c; ++j) {
    const double c = box.c_node(j);
    const auto phi = [&](cplx s) { return g.at(base, s, opts) - base(s + cplx(0.0, tau), opts); };
    const NormResult nr = op_function_norm(TruncatedShift::standard(c, box.height(j)), phi, norm);
    if (first || nr.norm > best.value) {
      best = {nr.norm, c, nr.tau_star};
      first = false;
    }
  }
  return best;
}

}  // namespace

QuantizedResult quantized_sup(const TargetFunction& g, double tau, double c_lo, double c_hi, double T0, int grid_c,
                              const BaseFunction& base, const NormOptions& norm, const EvalOptions& opts) {
  CompactBox box = CompactBox::rectangle(c_lo, c_hi, T0, grid_c, 1);
  box.validate();
  return quantized_over(g, tau, box, base, norm, opts);
}

QuantizedResult quantized_sup_general(const TargetFunction& g, const CompactBox& box, double tau,
                                      const BaseFunction& base, const NormOptions& norm, const EvalOptions& opts) {
  box.validate();
  return quantized_over(g, tau, box, base, norm, opts);
}

ScanResult hurwitz_scan(const TargetFunction& g, double alpha, const CompactBox& box, double tau_max, double tau_step,
                        const std::vector<double>& eps_list, const ScanOptions& opts) {
  ScanOptions o = opts;
  o.require_nonvanishing = false;
  if (alpha == 1.0) {
    ScanResult r = scan_continuous(g, box, BaseFunction::zeta(), tau_max, tau_step, eps_list, o);
    r.notes.push_back("alpha = 1: Hurwitz zeta is zeta, scanned as zeta");
    return r;
  }
  ScanResult r = scan_continuous(g, box, BaseFunction::hurwitz(alpha), tau_max, tau_step, eps_list, o);
  if (alpha == 0.5) r.notes.push_back("alpha = 1/2 lies outside the strong universality range");
  r.notes.push_back("targets with zeros accepted");
  return r;
}

std::vector<cplx> taylor_coefficients(cplx w, int n, const EvalOptions& opts) {
  if (n < 0 || n > 30) throw Error(ErrorKind::InvalidArgument, "Taylor degree must lie in [0, 30]");
  const double radius = 0.5 * std::abs(w - 1.0);
  if (!(radius > 0.0)) throw Error(ErrorKind::RadiusTooSmall, "expansion point is the pole s = 1");
  constexpr int kNodes = 128;
  std::vector<cplx> f(kNodes);
  for (int j = 0; j < kNodes; ++j) f[j] = zeta(w + std::polar(radius, kTwoPi * j / kNodes), opts);
  std::vector<cplx> a(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    cplx acc = 0.0;
    for (int j = 0; j < kNodes; ++j) acc += f[j] * std::polar(std::pow(radius, -k), -kTwoPi * j * k / kNodes);
    a[static_cast<std::size_t>(k)] = acc / static_cast<double>(kNodes);
  }
  return a;
}

ScanResult taylor_translate_scan(const TargetFunction& g, const CompactBox& box, cplx z0, int n, double tau_max,
                                 double tau_step, const std::vector<double>& eps_list, const ScanOptions& opts) {
  box.validate();
  if (n < 0 || n > 30) throw Error(ErrorKind::InvalidArgument, "Taylor degree must lie in [0, 30]");
  const std::int64_t K = grid_last_index(tau_max, tau_step);
  const auto pts = box.points();
  double reach = 0.0;
  for (const cplx& z : pts) {
    if (z == z0) throw Error(ErrorKind::InvalidArgument, "expansion point must lie off the box grid");
    reach = std::max(reach, std::abs(z - z0));
  }
  // Smallest distance from z0 + i tau to the pole over the scanned range.
  const double lowest = std::clamp(-z0.imag(), 0.0, static_cast<double>(K) * tau_step);
  const double pole_distance = std::abs(z0 + cplx(0.0, lowest) - 1.0);
  if (!(reach < pole_distance)) {
    std::ostringstream os;
    os << "box reaches " << reach << " from z0 but the series converges only within " << pole_distance;
    throw Error(ErrorKind::RadiusTooSmall, os.str());
  }
  const BaseFunction base = BaseFunction::zeta();
  const auto gv = direct_target(g, box, base, opts.eval);

  ScanResult r;
  r.base = "taylor(zeta, n=" + std::to_string(n) + ")";
  r.target = g.name();
  r.tau_step = tau_step;
  r.window = tau_max;
  r.J.resize(static_cast<std::size_t>(K) + 1);
  r.taus.resize(r.J.size());
  std::vector<std::exception_ptr> failures(r.J.size());
  auto evaluate = [&](std::int64_t k) {
    try {
      const double tau = static_cast<double>(k) * tau_step;
      const auto a = taylor_coefficients(z0 + cplx(0.0, tau), n, opts.eval);
      double m = 0.0;
      for (std::size_t j = 0; j < pts.size(); ++j) {
        cplx p = 0.0;
        for (int d = n; d >= 0; --d) p = p * (pts[j] - z0) + a[static_cast<std::size_t>(d)];
        m = std::max(m, std::abs(gv[j] - p));
      }
      r.taus[static_cast<std::size_t>(k)] = tau;
      r.J[static_cast<std::size_t>(k)] = m;
    } catch (...) {
      failures[static_cast<std::size_t>(k)] = std::current_exception();
    }
  };
  if (opts.exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t k = 0; k <= K; ++k) evaluate(k);
  } else {
    for (std::int64_t k = 0; k <= K; ++k) evaluate(k);
  }
  for (const auto& e : failures)
    if (e) std::rethrow_exception(e);
  fill_stars(r);
  fill_density(r, eps_list, false);
  return r;
}

AlmostPeriodResult almost_period_scan(const BaseFunction& base, double alpha, double beta, double y_window,
                                      double eps, double ell, const AlmostPeriodOptions& opts) {
  if (!(alpha <= beta) || !(y_window >= 0.0) || !(eps > 0.0) || !(ell > 0.0) || !(opts.range >= 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "almost-period scan needs alpha <= beta, eps > 0, ell > 0");
  }
  const auto& kind = base.kind();
  const bool nonprincipal = std::holds_alternative<BaseFunction::Dirichlet>(kind) &&
                            !std::get<BaseFunction::Dirichlet>(kind).chi.is_principal();
  if (std::holds_alternative<BaseFunction::Coefficients>(kind)) {
  } else if (nonprincipal) {
    if (!(alpha > 0.0)) throw Error(ErrorKind::AssumptionViolated, "strip must lie in Re(s) > 0");
  } else if (!(alpha > 1.0)) {
    throw Error(ErrorKind::AssumptionViolated, "strip must lie in the half-plane of absolute convergence");
  }
  CompactBox rect = CompactBox::rectangle(alpha, beta, y_window, opts.grid_x, opts.grid_y);
  rect.strip_guard = false;
  rect.validate();
  const auto pts = rect.points();
  const double h = opts.tau_step;
  const std::int64_t K = grid_last_index(opts.range, h);
  const auto f0 = evaluate_shift_grid(base, pts, ShiftGrid{h, 0, 1}, opts.scan.eval, opts.scan.exec);
  const auto J = sup_over_grid(base, pts, f0, h, 0, K + 1, opts.scan);

  AlmostPeriodResult res;
  res.lipschitz = base.derivative_bound(alpha);
  std::vector<double> finds;
  for (std::int64_t k = 0; k <= K; ++k)
    if (J[static_cast<std::size_t>(k)] < eps) finds.push_back(static_cast<double>(k) * h);

  if (res.lipschitz >= 0.0) {
    const double L = res.lipschitz;
    const auto direct = [&](double tau) { return direct_sup(pts, f0, base, tau, opts.scan.eval); };
    std::function<bool(double, double, double, double, int)> search = [&](double a, double b, double ja, double jb,
                                                                          int depth) {
      const double m = 0.5 * (a + b);
      const double jm = direct(m);
      if (jm < eps) {
        finds.push_back(m);
        return true;
      }
      if (depth >= opts.max_depth) return false;
      const double quarter = 0.25 * (b - a);
      if (std::min(ja, jm) - L * quarter < eps && search(a, m, ja, jm, depth + 1)) return true;
      if (std::min(jm, jb) - L * quarter < eps && search(m, b, jm, jb, depth + 1)) return true;
      return false;
    };
    for (std::int64_t k = 0; k < K; ++k) {
      const double ja = J[static_cast<std::size_t>(k)];
      const double jb = J[static_cast<std::size_t>(k + 1)];
      if (ja < eps || jb < eps) continue;
      if (std::min(ja, jb) - L * 0.5 * h < eps) {
        ++res.refined_cells;
        search(static_cast<double>(k) * h, static_cast<double>(k + 1) * h, ja, jb, 0);
      }
    }
  }
  std::sort(finds.begin(), finds.end());

  const auto n_windows = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(opts.range / ell - 1e-12)));
  res.windows.resize(static_cast<std::size_t>(n_windows));
  for (std::int64_t w = 0; w < n_windows; ++w) {
    auto& win = res.windows[static_cast<std::size_t>(w)];
    win.lo = static_cast<double>(w) * ell;
    win.hi = std::min(static_cast<double>(w + 1) * ell, opts.range);
    win.best_J = std::numeric_limits<double>::infinity();
    const bool last = w + 1 == n_windows;
    for (double t : finds)
      if (t >= win.lo && (t < win.hi || (last && t <= win.hi))) win.finds.push_back(t);
    for (std::int64_t k = 0; k <= K; ++k) {
      const double t = static_cast<double>(k) * h;
      if (t >= win.lo && (t < win.hi || (last && t <= win.hi)) && J[static_cast<std::size_t>(k)] < win.best_J) {
        win.best_J = J[static_cast<std::size_t>(k)];
        win.best_tau = t;
      }
    }
    if (win.finds.empty()) res.empty_windows.push_back(static_cast<std::size_t>(w));
  }
  return res;
}

}  // namespace fzeta
