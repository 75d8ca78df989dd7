#include "fzeta/shift_kernel.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fzeta {

void set_worker_count(int workers) {
  if (workers < 1) throw Error(ErrorKind::InvalidArgument, "worker count must be >= 1");
  omp_set_num_threads(workers);
}

int worker_count() { return omp_get_max_threads(); }

BaseFunction BaseFunction::hurwitz(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw Error(ErrorKind::BadAlpha, "alpha must lie in (0, 1]");
  return BaseFunction(Hurwitz{alpha});
}

BaseFunction BaseFunction::coefficients(std::vector<cplx> a) {
  if (a.empty()) throw Error(ErrorKind::InvalidArgument, "coefficient list is empty");
  return BaseFunction(Coefficients{std::move(a)});
}

namespace {

cplx dirichlet_polynomial(std::span<const cplx> a, cplx s) {
  cplx acc = 0.0;
  for (std::size_t n = a.size(); n >= 1; --n) {
    if (a[n - 1] != cplx(0.0, 0.0)) acc += a[n - 1] * std::exp(-s * std::log(static_cast<double>(n)));
  }
  return acc;
}

}  // namespace

cplx BaseFunction::operator()(cplx s, const EvalOptions& opts) const {
  struct Visitor {
    cplx s;
    const EvalOptions& opts;
    cplx operator()(const Zeta&) const { return fzeta::zeta(s, opts); }
    cplx operator()(const Hurwitz& h) const { return hurwitz_zeta(s, h.alpha, opts); }
    cplx operator()(const Dirichlet& d) const { return dirichlet_l(s, d.chi, opts); }
    cplx operator()(const Coefficients& c) const { return dirichlet_polynomial(c.a, s); }
  };
  return std::visit(Visitor{s, opts}, kind_);
}

std::string BaseFunction::name() const {
  struct Visitor {
    std::string operator()(const Zeta&) const { return "zeta"; }
    std::string operator()(const Hurwitz& h) const {
      std::ostringstream os;
      os.precision(17);
      os << "hurwitz(" << h.alpha << ")";
      return os.str();
    }
    std::string operator()(const Dirichlet& d) const { return "dirichlet(mod " + std::to_string(d.chi.modulus()) + ")"; }
    std::string operator()(const Coefficients& c) const { return "coefficients(" + std::to_string(c.a.size()) + ")"; }
  };
  return std::visit(Visitor{}, kind_);
}

double BaseFunction::derivative_bound(double sigma) const {
  struct Visitor {
    double sigma;
    double operator()(const Zeta&) const {
      if (sigma <= 1.0) return -1.0;
      return std::abs(zeta_derivative(cplx(sigma, 0.0)).real());
    }
    double operator()(const Hurwitz& h) const {
      if (sigma <= 1.0) return -1.0;
      // |log alpha| alpha^{-sigma} + sum_{n>=1} log(n+1) n^{-sigma}, and
      // log(n+1) <= log n + 1/n.
      const double first = std::abs(std::log(h.alpha)) * std::pow(h.alpha, -sigma);
      return first + std::abs(zeta_derivative(cplx(sigma, 0.0)).real()) + fzeta::zeta(cplx(sigma + 1.0, 0.0)).real();
    }
    double operator()(const Dirichlet&) const {
      if (sigma <= 1.0) return -1.0;
      return std::abs(zeta_derivative(cplx(sigma, 0.0)).real());
    }
    double operator()(const Coefficients& c) const {
      double acc = 0.0;
      for (std::size_t n = 2; n <= c.a.size(); ++n) {
        const double x = static_cast<double>(n);
        acc += std::abs(c.a[n - 1]) * std::log(x) * std::pow(x, -sigma);
      }
      return acc;
    }
  };
  return std::visit(Visitor{sigma}, kind_);
}

namespace {

std::vector<cplx> serial_grid(const BaseFunction& f, std::span<const cplx> points, const ShiftGrid& grid,
                              const EvalOptions& opts) {
  std::vector<cplx> out(static_cast<std::size_t>(grid.count) * points.size());
  for (std::int64_t k = 0; k < grid.count; ++k) {
    const double tau = grid.tau(grid.first + k);
    for (std::size_t j = 0; j < points.size(); ++j) {
      out[static_cast<std::size_t>(k) * points.size() + j] = f(points[j] + cplx(0.0, tau), opts);
    }
  }
  return out;
}

// Head sums sum_{n<N} w_n (n+alpha)^{-s_j - i tau_k} for the absolute indices of
// one block, advancing each term by its rotation. Results for k outside
// [lo, hi) are skipped. `weights` may be empty (all ones).
struct RotationBlock {
  std::vector<double> log_base;  // log(n + alpha)
  std::vector<double> rot_re, rot_im;
};

RotationBlock make_rotations(double alpha, std::int64_t terms, double step) {
  RotationBlock r;
  r.log_base.resize(terms);
  r.rot_re.resize(terms);
  r.rot_im.resize(terms);
  for (std::int64_t n = 0; n < terms; ++n) {
    const double lb = std::log(static_cast<double>(n) + alpha);
    r.log_base[n] = lb;
    r.rot_re[n] = std::cos(step * lb);
    r.rot_im[n] = -std::sin(step * lb);
  }
  return r;
}

// Writes head sums for k in [k_begin, k_end) (absolute), anchored at k_anchor.
void rotate_block(const RotationBlock& rot, std::int64_t terms, std::span<const cplx> weights, cplx s,
                  double step, std::int64_t k_anchor, std::int64_t k_begin, std::int64_t k_end,
                  std::vector<double>& re, std::vector<double>& im, std::vector<cplx>& sums) {
  const double tau0 = static_cast<double>(k_anchor) * step;
  for (std::int64_t n = 0; n < terms; ++n) {
    const double lb = rot.log_base[n];
    const double mag = std::exp(-s.real() * lb);
    const double phase = -(s.imag() + tau0) * lb;
    cplx w = mag * cplx(std::cos(phase), std::sin(phase));
    if (!weights.empty()) w *= weights[n];
    re[n] = w.real();
    im[n] = w.imag();
  }
  for (std::int64_t k = k_anchor; k < k_end; ++k) {
    if (k >= k_begin) {
      double acc_re[4] = {0, 0, 0, 0}, acc_im[4] = {0, 0, 0, 0};
      std::int64_t n = 0;
      for (; n + 4 <= terms; n += 4) {
        for (int u = 0; u < 4; ++u) {
          acc_re[u] += re[n + u];
          acc_im[u] += im[n + u];
        }
      }
      for (; n < terms; ++n) {
        acc_re[0] += re[n];
        acc_im[0] += im[n];
      }
      sums[k - k_begin] = cplx((acc_re[0] + acc_re[1]) + (acc_re[2] + acc_re[3]),
                               (acc_im[0] + acc_im[1]) + (acc_im[2] + acc_im[3]));
    }
    for (std::int64_t m = 0; m < terms; ++m) {
      const double r = re[m] * rot.rot_re[m] - im[m] * rot.rot_im[m];
      const double i = re[m] * rot.rot_im[m] + im[m] * rot.rot_re[m];
      re[m] = r;
      im[m] = i;
    }
  }
}

// Hurwitz zeta on one block of the grid for one point: head length chosen from
// the block's extreme shifts so it depends only on the block.
void hurwitz_block(double alpha, cplx s, double step, std::int64_t block, std::int64_t k_begin,
                   std::int64_t k_end, const EvalOptions& opts, std::vector<cplx>& out_row) {
  const std::int64_t anchor = block * kShiftBlock;
  const std::int64_t last = anchor + kShiftBlock - 1;
  const cplx s_lo = s + cplx(0.0, static_cast<double>(anchor) * step);
  const cplx s_hi = s + cplx(0.0, static_cast<double>(last) * step);
  const std::int64_t terms = std::max(plan_euler_maclaurin(s_lo, alpha, opts).head_terms,
                                      plan_euler_maclaurin(s_hi, alpha, opts).head_terms);
  const RotationBlock rot = make_rotations(alpha, terms, step);
  std::vector<double> re(terms), im(terms);
  std::vector<cplx> sums(static_cast<std::size_t>(k_end - k_begin));
  rotate_block(rot, terms, {}, s, step, anchor, k_begin, k_end, re, im, sums);
  for (std::int64_t k = k_begin; k < k_end; ++k) {
    const cplx sk = s + cplx(0.0, static_cast<double>(k) * step);
    if (sk == cplx(1.0, 0.0)) throw Error(ErrorKind::PoleAtOne, "shift grid hits s = 1");
    out_row[k - k_begin] = sums[k - k_begin] + euler_maclaurin_tail(sk, alpha, terms);
  }
}

void coefficient_block(std::span<const cplx> a, cplx s, double step, std::int64_t block, std::int64_t k_begin,
                       std::int64_t k_end, std::vector<cplx>& out_row) {
  const auto terms = static_cast<std::int64_t>(a.size());
  const RotationBlock rot = make_rotations(1.0, terms, step);
  std::vector<double> re(terms), im(terms);
  rotate_block(rot, terms, a, s, step, block * kShiftBlock, k_begin, k_end, re, im, out_row);
}

std::vector<cplx> parallel_grid(const BaseFunction& f, std::span<const cplx> points, const ShiftGrid& grid,
                                const EvalOptions& opts) {
  const std::size_t width = points.size();
  std::vector<cplx> out(static_cast<std::size_t>(grid.count) * width);
  if (grid.count <= 0 || width == 0) return out;
  const std::int64_t k_first = grid.first;
  const std::int64_t k_last = grid.first + grid.count;  // exclusive
  auto floor_div = [](std::int64_t a, std::int64_t b) { return a >= 0 ? a / b : -((-a + b - 1) / b); };
  const std::int64_t b_first = floor_div(k_first, kShiftBlock);
  const std::int64_t b_last = floor_div(k_last - 1, kShiftBlock);
  const std::int64_t tasks = (b_last - b_first + 1) * static_cast<std::int64_t>(width);

  // Errors inside the parallel region are captured and rethrown afterwards.
  std::vector<std::exception_ptr> failures(static_cast<std::size_t>(tasks));

#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t t = 0; t < tasks; ++t) {
    try {
      const std::int64_t block = b_first + t / static_cast<std::int64_t>(width);
      const auto j = static_cast<std::size_t>(t % static_cast<std::int64_t>(width));
      const std::int64_t lo = std::max(k_first, block * kShiftBlock);
      const std::int64_t hi = std::min(k_last, (block + 1) * kShiftBlock);
      std::vector<cplx> row(static_cast<std::size_t>(hi - lo));
      const cplx s = points[j];
      if (const auto* h = std::get_if<BaseFunction::Hurwitz>(&f.kind())) {
        hurwitz_block(h->alpha, s, grid.step, block, lo, hi, opts, row);
      } else if (std::holds_alternative<BaseFunction::Zeta>(f.kind())) {
        hurwitz_block(1.0, s, grid.step, block, lo, hi, opts, row);
      } else if (const auto* c = std::get_if<BaseFunction::Coefficients>(&f.kind())) {
        coefficient_block(c->a, s, grid.step, block, lo, hi, row);
      } else {
        const auto& chi = std::get<BaseFunction::Dirichlet>(f.kind()).chi;
        const std::int64_t q = chi.modulus();
        const double qd = static_cast<double>(q);
        EvalOptions inner = opts;
        inner.abs_tol = opts.abs_tol / (qd * std::max(1.0, std::pow(qd, -s.real())));
        std::vector<cplx> part(row.size());
        for (std::int64_t a = 1; a <= q; ++a) {
          const cplx c = chi(a);
          if (c == cplx(0.0, 0.0)) continue;
          hurwitz_block(static_cast<double>(a) / qd, s, grid.step, block, lo, hi, inner, part);
          for (std::size_t i = 0; i < row.size(); ++i) row[i] += c * part[i];
        }
        for (std::int64_t k = lo; k < hi; ++k) {
          const cplx sk = s + cplx(0.0, static_cast<double>(k) * grid.step);
          row[k - lo] *= std::exp(-sk * std::log(qd));
        }
      }
      for (std::int64_t k = lo; k < hi; ++k) {
        out[static_cast<std::size_t>(k - k_first) * width + j] = checked(row[k - lo], "evaluate_shift_grid");
      }
    } catch (...) {
      failures[static_cast<std::size_t>(t)] = std::current_exception();
    }
  }
  for (const auto& e : failures)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace

std::vector<cplx> evaluate_shift_grid(const BaseFunction& f, std::span<const cplx> points, const ShiftGrid& grid,
                                      const EvalOptions& opts, Exec exec) {
  if (!(grid.step > 0.0)) throw Error(ErrorKind::InvalidArgument, "shift grid step must be positive");
  if (grid.count < 0) throw Error(ErrorKind::InvalidArgument, "shift grid count must be >= 0");
  if (exec == Exec::Serial) return serial_grid(f, points, grid, opts);
  return parallel_grid(f, points, grid, opts);
}

}  // namespace fzeta
