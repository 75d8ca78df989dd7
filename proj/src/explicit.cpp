#include "fzeta/explicit.hpp"

#include <cmath>
#include <limits>

#include "fzeta/zeta.hpp"

namespace fzeta {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_window(int k_max) {
  if (k_max < 0) throw Error(ErrorKind::InvalidArgument, "k_max must be nonnegative");
}

// Periodic pole family omega_k = real + i k period with a common residue.
std::vector<ComplexDimension> periodic(double real, double period, cplx residue, int k_max) {
  std::vector<ComplexDimension> out;
  out.push_back({cplx(real, 0.0), residue, 0});
  for (int k = 1; k <= k_max; ++k) {
    out.push_back({cplx(real, -k * period), residue, -k});
    out.push_back({cplx(real, k * period), residue, k});
  }
  return out;
}

bool contains_point(const std::vector<ComplexDimension>& dims, cplx z) {
  for (const auto& d : dims)
    if (std::abs(d.omega - z) < 1e-12) return true;
  return false;
}

}  // namespace

std::vector<ComplexDimension> complex_dimensions(const ClosedForm& cf, int k_max) {
  check_window(k_max);
  return std::visit(
      Overloaded{
          [&](const family::SelfSimilar& f) {
            const double lb = std::log(f.scale);
            return periodic(std::log(f.multiplicity) / lb, kTwoPi / lb, cplx(1.0 / (f.multiplicity * lb), 0.0), k_max);
          },
          [&](const family::Harmonic&) { return std::vector<ComplexDimension>{{cplx(1.0, 0.0), cplx(1.0, 0.0), 0}}; },
          [&](const family::PrimeHarmonic& f) {
            const double lp = std::log(static_cast<double>(f.p));
            return periodic(0.0, kTwoPi / lp, cplx(1.0 / lp, 0.0), k_max);
          },
          [&](const family::PrimeString&) -> std::vector<ComplexDimension> {
            throw Error(ErrorKind::UnsupportedKind, "poles at the zeros of zeta are not computed");
          },
          [&](const family::MoebiusString&) -> std::vector<ComplexDimension> {
            throw Error(ErrorKind::UnsupportedKind, "poles of 1/zeta are not computed");
          },
          [&](const family::Finite&) { return std::vector<ComplexDimension>{}; },
      },
      cf);
}

double pole_separation(const ClosedForm& cf) {
  return std::visit(Overloaded{
                        [](const family::SelfSimilar& f) { return kTwoPi / std::log(f.scale); },
                        [](const family::PrimeHarmonic& f) { return kTwoPi / std::log(static_cast<double>(f.p)); },
                        [](const auto&) { return std::numeric_limits<double>::infinity(); },
                    },
                    cf);
}

cplx contour_residue(const std::function<cplx(cplx)>& f, cplx center, double radius, int n) {
  if (!(radius > 0.0) || n < 4) throw Error(ErrorKind::InvalidArgument, "contour needs radius > 0 and n >= 4");
  cplx acc = 0.0;
  for (int j = 0; j < n; ++j) {
    const cplx dz = std::polar(radius, kTwoPi * j / n);
    acc += f(center + dz) * dz;
  }
  return acc / static_cast<double>(n);
}

cplx residue_by_quadrature(const ClosedForm& cf, const ComplexDimension& d) {
  const double radius = std::min(1e-2, 0.5 * pole_separation(cf));
  return contour_residue([&](cplx s) { return closed_form_zeta(cf, s); }, d.omega, radius, 64);
}

double density_geometric_states(const ClosedForm& cf, double x, int k_max) {
  if (!(x > 0.0)) throw Error(ErrorKind::InvalidArgument, "density needs x > 0");
  const auto dims = complex_dimensions(cf, k_max);
  if (contains_point(dims, cplx(1.0, 0.0))) {
    throw Error(ErrorKind::AssumptionViolated, "a dimension at s = 1 is excluded from the density formula");
  }
  const double lx = std::log(x);
  double acc = 0.0;
  for (const auto& d : dims) acc += (d.residue * std::exp((d.omega - 1.0) * lx)).real();
  return acc;
}

double density_spectral_states(const ClosedForm& cf, double x, int k_max, const EvalOptions& opts) {
  if (!(x > 0.0)) throw Error(ErrorKind::InvalidArgument, "density needs x > 0");
  const auto dims = complex_dimensions(cf, k_max);
  if (contains_point(dims, cplx(1.0, 0.0))) throw Error(ErrorKind::PoleHit, "zeta_eta has a pole at s = 1");
  const double lx = std::log(x);
  double acc = closed_form_zeta(cf, 1.0).real();
  for (const auto& d : dims) acc += (d.residue * zeta(d.omega, opts) * std::exp((d.omega - 1.0) * lx)).real();
  return acc;
}

double counting_from_dimensions(const ClosedForm& cf, double x, int k_max, Level level, const EvalOptions& opts) {
  if (!(x > 0.0)) throw Error(ErrorKind::InvalidArgument, "counting needs x > 0");
  const auto dims = complex_dimensions(cf, k_max);
  if (contains_point(dims, cplx(0.0, 0.0))) {
    throw Error(ErrorKind::AssumptionViolated, "a dimension at s = 0 makes the pole of x^s/s double");
  }
  const double lx = std::log(x);
  double acc = 0.0;
  if (level == Level::Geometric) {
    for (const auto& d : dims) acc += (d.residue * std::exp(d.omega * lx) / d.omega).real();
    acc += closed_form_zeta(cf, 0.0).real();
  } else {
    if (contains_point(dims, cplx(1.0, 0.0))) throw Error(ErrorKind::PoleHit, "zeta_eta has a pole at s = 1");
    acc += closed_form_zeta(cf, 1.0).real() * x;
    for (const auto& d : dims) acc += (d.residue * zeta(d.omega, opts) * std::exp(d.omega * lx) / d.omega).real();
    acc += -0.5 * closed_form_zeta(cf, 0.0).real();
  }
  return acc;
}

ExplicitReport compare_explicit_vs_direct(const GeneralizedString& eta, const std::vector<double>& xs, int k_max,
                                          Level level, const EvalOptions& opts) {
  if (!eta.closed_form()) throw Error(ErrorKind::UnsupportedKind, "explicit formula needs a closed form");
  ExplicitReport report;
  for (double x : xs) {
    ExplicitRow row{};
    row.x = x;
    row.direct = level == Level::Geometric ? counting_function(eta, x).real() : spectral_counting(eta, x).real();
    row.explicit_value = counting_from_dimensions(*eta.closed_form(), x, k_max, level, opts);
    row.error = std::abs(row.direct - row.explicit_value);
    for (const Atom& a : eta.atoms()) {
      if (level == Level::Geometric ? std::abs(a.x - x) <= kAtomMergeTolerance * x
                                    : std::abs(x / a.x - std::round(x / a.x)) <= kAtomMergeTolerance * (x / a.x)) {
        row.at_atom = true;
        break;
      }
    }
    report.half_jump_mode = report.half_jump_mode || row.at_atom;
    report.max_error = std::max(report.max_error, row.error);
    report.mean_error += row.error;
    report.rows.push_back(row);
  }
  if (!report.rows.empty()) report.mean_error /= static_cast<double>(report.rows.size());
  return report;
}

std::vector<double> log_midpoints(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 0) throw Error(ErrorKind::InvalidArgument, "log_midpoints needs 0 < lo < hi");
  std::vector<double> xs;
  for (int i = 0; i < n; ++i) xs.push_back(lo * std::pow(hi / lo, (i + 0.5) / n));
  return xs;
}

}  // namespace fzeta
