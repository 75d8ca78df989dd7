#include "fzeta/strings.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fzeta/arith.hpp"
#include "fzeta/zeta.hpp"

namespace fzeta {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool same_scale(double a, double b) { return std::abs(a - b) <= kAtomMergeTolerance * std::max(a, b); }

bool below(double a, double b) { return a < b && !same_scale(a, b); }

void require_covered(const GeneralizedString& eta, double x) {
  if (below(eta.covered_to(), x)) {
    std::ostringstream os;
    os << "atoms are only complete up to " << eta.covered_to() << ", requested " << x;
    throw Error(ErrorKind::TruncationTooShort, os.str());
  }
}

cplx power_minus(double x, cplx s) { return std::exp(-s * std::log(x)); }

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

ClosedForm cantor_form() { return family::SelfSimilar{3.0, 2.0}; }

std::string closed_form_name(const ClosedForm& cf) {
  return std::visit(Overloaded{
                        [](const family::SelfSimilar& f) {
                          std::ostringstream os;
                          os.precision(17);
                          os << "self_similar(scale=" << f.scale << ", multiplicity=" << f.multiplicity << ")";
                          return os.str();
                        },
                        [](const family::Harmonic&) { return std::string("harmonic"); },
                        [](const family::PrimeHarmonic& f) { return "prime_harmonic(" + std::to_string(f.p) + ")"; },
                        [](const family::PrimeString&) { return std::string("prime_string"); },
                        [](const family::MoebiusString&) { return std::string("moebius_string"); },
                        [](const family::Finite& f) { return "finite(" + std::to_string(f.atoms.size()) + ")"; },
                    },
                    cf);
}

std::vector<Atom> merge_atoms(std::vector<Atom> atoms) {
  for (const Atom& a : atoms) {
    if (!(a.x > 0.0) || !std::isfinite(a.x)) throw Error(ErrorKind::InvalidArgument, "atom scales must be positive and finite");
    if (!is_finite(a.w)) throw Error(ErrorKind::InvalidArgument, "atom weights must be finite");
  }
  std::stable_sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.x < b.x; });
  std::vector<Atom> out;
  out.reserve(atoms.size());
  for (const Atom& a : atoms) {
    if (!out.empty() && same_scale(out.back().x, a.x)) {
      out.back().w += a.w;
    } else {
      out.push_back(a);
    }
  }
  std::erase_if(out, [](const Atom& a) { return a.w == cplx(0.0, 0.0); });
  return out;
}

GeneralizedString::GeneralizedString(std::vector<Atom> atoms, std::optional<ClosedForm> closed_form, double covered_to)
    : atoms_(merge_atoms(std::move(atoms))), closed_form_(std::move(closed_form)), covered_to_(covered_to) {
  if (!(covered_to_ > 0.0)) throw Error(ErrorKind::InvalidArgument, "coverage bound must be positive");
  x0_ = atoms_.empty() ? covered_to_ : atoms_.front().x;
}

GeneralizedString GeneralizedString::from_atoms(std::vector<Atom> atoms) {
  if (atoms.empty()) throw Error(ErrorKind::InvalidArgument, "a string needs at least one atom");
  GeneralizedString s(std::move(atoms), std::nullopt, kInf);
  if (s.atoms().empty()) throw Error(ErrorKind::InvalidArgument, "all atom weights are zero");
  return s;
}

bool GeneralizedString::is_positive() const noexcept {
  return std::all_of(atoms_.begin(), atoms_.end(), [](const Atom& a) { return a.w.imag() == 0.0 && a.w.real() > 0.0; });
}

bool GeneralizedString::operator==(const GeneralizedString& other) const {
  if (atoms_ != other.atoms_ || covered_to_ != other.covered_to_) return false;
  if (closed_form_.has_value() != other.closed_form_.has_value()) return false;
  if (!closed_form_) return true;
  return closed_form_name(*closed_form_) == closed_form_name(*other.closed_form_);
}

GeneralizedString unit_string() { return builtin_string(family::Finite{{Atom{1.0, 1.0}}}, kInf); }

GeneralizedString builtin_string(const ClosedForm& kind, double X) {
  if (!(X > 0.0)) throw Error(ErrorKind::InvalidArgument, "truncation must be positive");
  std::vector<Atom> atoms;
  double first = 0.0;
  double covered = X;
  std::visit(Overloaded{
                 [&](const family::SelfSimilar& f) {
                   if (!(f.scale > 1.0) || !(f.multiplicity > 0.0)) {
                     throw Error(ErrorKind::InvalidArgument, "self-similar string needs scale > 1 and multiplicity > 0");
                   }
                   first = f.scale;
                   double x = f.scale;
                   double w = 1.0;
                   while (x <= X * (1.0 + kAtomMergeTolerance)) {
                     atoms.push_back({x, w});
                     x *= f.scale;
                     w *= f.multiplicity;
                   }
                 },
                 [&](const family::Harmonic&) {
                   first = 1.0;
                   for (double n = 1.0; n <= X * (1.0 + kAtomMergeTolerance); n += 1.0) atoms.push_back({n, 1.0});
                 },
                 [&](const family::PrimeHarmonic& f) {
                   if (!is_prime(f.p)) throw Error(ErrorKind::InvalidArgument, "prime harmonic string needs a prime");
                   first = static_cast<double>(f.p);
                   for (double x = first; x <= X * (1.0 + kAtomMergeTolerance); x *= first) atoms.push_back({x, 1.0});
                 },
                 [&](const family::PrimeString&) {
                   first = 2.0;
                   const auto limit = static_cast<std::int64_t>(std::floor(X * (1.0 + kAtomMergeTolerance)));
                   for (std::int64_t p : primes_up_to(limit)) {
                     const double pd = static_cast<double>(p);
                     for (double x = pd; x <= X * (1.0 + kAtomMergeTolerance); x *= pd) atoms.push_back({x, std::log(pd)});
                   }
                 },
                 [&](const family::MoebiusString&) {
                   first = 1.0;
                   const auto limit = static_cast<std::int64_t>(std::floor(X * (1.0 + kAtomMergeTolerance)));
                   const auto mu = mobius_table(std::max<std::int64_t>(limit, 1));
                   for (std::int64_t j = 1; j <= limit; ++j)
                     if (mu[j] != 0) atoms.push_back({static_cast<double>(j), static_cast<double>(mu[j])});
                 },
                 [&](const family::Finite& f) {
                   const auto merged = merge_atoms(f.atoms);
                   if (merged.empty()) throw Error(ErrorKind::InvalidArgument, "finite string has no atoms");
                   first = merged.front().x;
                   for (const Atom& a : merged)
                     if (a.x <= X * (1.0 + kAtomMergeTolerance)) atoms.push_back(a);
                   if (X >= merged.back().x) covered = kInf;
                 },
             },
             kind);
  if (below(X, first)) throw Error(ErrorKind::EmptyTruncation, "truncation lies below the first atom");
  return GeneralizedString(std::move(atoms), kind, covered);
}

cplx counting_function(const GeneralizedString& eta, double x) {
  if (!(x > 0.0)) throw Error(ErrorKind::InvalidArgument, "counting function needs x > 0");
  require_covered(eta, x);
  cplx acc = 0.0;
  for (const Atom& a : eta.atoms()) {
    if (same_scale(a.x, x)) {
      acc += 0.5 * a.w;
    } else if (a.x < x) {
      acc += a.w;
    } else {
      break;
    }
  }
  return acc;
}

cplx geometric_zeta_atoms(const GeneralizedString& eta, cplx s, std::size_t n_max) {
  const auto& atoms = eta.atoms();
  const std::size_t n = std::min(n_max, atoms.size());
  cplx acc = 0.0;
  for (std::size_t i = n; i-- > 0;) acc += atoms[i].w * power_minus(atoms[i].x, s);
  return acc;
}

cplx closed_form_zeta(const ClosedForm& cf, cplx s) {
  auto pole = [](const std::string& what) { return Error(ErrorKind::PoleHit, what); };
  return std::visit(
      Overloaded{
          [&](const family::SelfSimilar& f) -> cplx {
            const cplx rs = power_minus(f.scale, s);
            const cplx denom = 1.0 - f.multiplicity * rs;
            if (std::abs(denom) < 1e-14) throw pole("self-similar zeta function has a pole here");
            return rs / denom;
          },
          [&](const family::Harmonic&) -> cplx {
            if (s == cplx(1.0, 0.0)) throw pole("harmonic string zeta has a pole at s = 1");
            return zeta(s);
          },
          [&](const family::PrimeHarmonic& f) -> cplx {
            const cplx ps = power_minus(static_cast<double>(f.p), s);
            const cplx denom = 1.0 - ps;
            if (std::abs(denom) < 1e-14) throw pole("prime harmonic zeta has a pole here");
            return ps / denom;
          },
          [&](const family::PrimeString&) -> cplx {
            if (s == cplx(1.0, 0.0)) throw pole("prime string zeta has a pole at s = 1");
            const cplx z = zeta(s);
            if (std::abs(z) < 1e-14) throw pole("prime string zeta has a pole at a zero of zeta");
            return -zeta_derivative(s) / z;
          },
          [&](const family::MoebiusString&) -> cplx {
            if (s == cplx(1.0, 0.0)) return 0.0;
            const cplx z = zeta(s);
            if (std::abs(z) < 1e-14) throw pole("1/zeta has a pole at a zero of zeta");
            return 1.0 / z;
          },
          [&](const family::Finite& f) -> cplx {
            cplx acc = 0.0;
            for (const Atom& a : merge_atoms(f.atoms)) acc += a.w * power_minus(a.x, s);
            return acc;
          },
      },
      cf);
}

cplx geometric_zeta_closed(const GeneralizedString& eta, cplx s) {
  if (eta.closed_form()) return closed_form_zeta(*eta.closed_form(), s);
  if (eta.is_finite_measure()) return geometric_zeta_atoms(eta, s, eta.atoms().size());
  throw Error(ErrorKind::UnsupportedKind, "string has no closed-form zeta function");
}

double abs_tail_bound(const ClosedForm& cf, double sigma, double X) {
  const double dim = dimension(GeneralizedString({}, cf, 1.0)).value;
  if (!(sigma > dim)) throw Error(ErrorKind::AssumptionViolated, "tail bound needs sigma above the dimension");
  return std::visit(Overloaded{
                        [&](const family::SelfSimilar& f) {
                          // last index J with b^J <= X
                          double J = std::floor(std::log(X) / std::log(f.scale) + 1e-12);
                          if (J < 0) J = 0;
                          const double ratio = f.multiplicity * std::pow(f.scale, -sigma);
                          return std::pow(f.multiplicity, J) * std::pow(f.scale, -(J + 1.0) * sigma) / (1.0 - ratio);
                        },
                        [&](const family::Harmonic&) {
                          const double M = std::max(1.0, std::floor(X));
                          return std::pow(M, 1.0 - sigma) / (sigma - 1.0);
                        },
                        [&](const family::PrimeHarmonic& f) {
                          const double p = static_cast<double>(f.p);
                          double K = std::floor(std::log(X) / std::log(p) + 1e-12);
                          if (K < 0) K = 0;
                          return std::pow(p, -(K + 1.0) * sigma) / (1.0 - std::pow(p, -sigma));
                        },
                        [&](const family::PrimeString&) {
                          // sum_{n>X} log n n^{-sigma} <= int_M^inf log x x^{-sigma} dx, M = max(3, floor X)
                          const double M = std::max(3.0, std::floor(X));
                          const double a = sigma - 1.0;
                          return std::pow(M, -a) * (std::log(M) / a + 1.0 / (a * a));
                        },
                        [&](const family::MoebiusString&) {
                          const double M = std::max(1.0, std::floor(X));
                          return std::pow(M, 1.0 - sigma) / (sigma - 1.0);
                        },
                        [&](const family::Finite& f) {
                          double acc = 0.0;
                          for (const Atom& a : f.atoms)
                            if (a.x > X) acc += std::abs(a.w) * std::pow(a.x, -sigma);
                          return acc;
                        },
                    },
                    cf);
}

Dimension dimension(const GeneralizedString& eta) {
  if (eta.closed_form()) {
    const double value = std::visit(
        Overloaded{
            [](const family::SelfSimilar& f) { return std::log(f.multiplicity) / std::log(f.scale); },
            [](const family::Harmonic&) { return 1.0; },
            [](const family::PrimeHarmonic&) { return 0.0; },
            [](const family::PrimeString&) { return 1.0; },
            [](const family::MoebiusString&) { return 1.0; },
            [](const family::Finite&) { return -kInf; },
        },
        *eta.closed_form());
    return {value, false};
  }
  const auto& atoms = eta.atoms();
  if (atoms.size() < 50) throw Error(ErrorKind::InsufficientAtoms, "dimension estimate needs at least 50 atoms");
  const double top = atoms.back().x;
  std::vector<double> lx, ln;
  for (const Atom& a : atoms) {
    if (a.x < top / 10.0) continue;
    const double n = std::abs(counting_function(eta, a.x));
    if (n > 0.0) {
      lx.push_back(std::log(a.x));
      ln.push_back(std::log(n));
    }
  }
  if (lx.size() < 2) {
    lx.clear();
    ln.clear();
    for (std::size_t i = atoms.size() - 2; i < atoms.size(); ++i) {
      const double n = std::abs(counting_function(eta, atoms[i].x));
      if (n <= 0.0) throw Error(ErrorKind::InsufficientAtoms, "counting function vanishes at the top atoms");
      lx.push_back(std::log(atoms[i].x));
      ln.push_back(std::log(n));
    }
  }
  const double k = static_cast<double>(lx.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ln[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ln[i] - my);
  }
  if (sxx <= 0.0) throw Error(ErrorKind::InsufficientAtoms, "degenerate scales in the top decade");
  return {sxy / sxx, true};
}

GeneralizedString spectral_measure_atoms(const GeneralizedString& eta, double X) {
  if (!(X > 0.0)) throw Error(ErrorKind::InvalidArgument, "truncation must be positive");
  require_covered(eta, X);
  std::vector<Atom> out;
  for (const Atom& a : eta.atoms()) {
    if (below(X, a.x)) break;
    for (double k = 1.0;; k += 1.0) {
      const double x = k * a.x;
      if (below(X, x)) break;
      out.push_back({x, a.w});
    }
  }
  return GeneralizedString(std::move(out), std::nullopt, X);
}

cplx spectral_counting(const GeneralizedString& eta, double x) {
  if (!(x > 0.0)) throw Error(ErrorKind::InvalidArgument, "counting function needs x > 0");
  require_covered(eta, x);
  cplx acc = 0.0;
  for (double n = 1.0; !below(x / n, eta.x0()); n += 1.0) acc += counting_function(eta, x / n);
  return acc;
}

cplx spectral_zeta(const GeneralizedString& eta, cplx s, const EvalOptions& opts) {
  if (s == cplx(1.0, 0.0)) throw Error(ErrorKind::PoleHit, "zeta factor has a pole at s = 1");
  return checked(geometric_zeta_closed(eta, s) * zeta(s, opts), "spectral_zeta");
}

SpectralZetaCheck spectral_zeta_check(const GeneralizedString& eta, cplx s, double X, const EvalOptions& opts) {
  if (!eta.closed_form() && !eta.is_finite_measure()) {
    throw Error(ErrorKind::UnsupportedKind, "direct-vs-product check needs a closed form");
  }
  const double sigma = s.real();
  const double dim = dimension(eta).value;
  if (!(sigma > std::max(dim, 1.0))) throw Error(ErrorKind::AssumptionViolated, "direct sum needs Re(s) > max(D, 1)");

  SpectralZetaCheck out{};
  out.product = spectral_zeta(eta, s, opts);
  const GeneralizedString nu = spectral_measure_atoms(eta, X);
  out.direct = geometric_zeta_atoms(nu, s, nu.atoms().size());
  out.discrepancy = std::abs(out.product - out.direct);

  // Atoms k x_j > X: for x_j <= X the k-tail is bounded by K^{1-sigma}/(sigma-1)
  // with K = floor(X/x_j); atoms of eta beyond X contribute |w| x^{-sigma} zeta(sigma).
  double bound = 0.0;
  for (const Atom& a : eta.atoms()) {
    if (below(X, a.x)) break;
    const double K = std::floor(X / a.x * (1.0 + kAtomMergeTolerance));
    bound += std::abs(a.w) * std::pow(a.x, -sigma) * std::pow(K, 1.0 - sigma) / (sigma - 1.0);
  }
  const double beyond = eta.closed_form() ? abs_tail_bound(*eta.closed_form(), sigma, X) : 0.0;
  out.tail_bound = bound + beyond * zeta(cplx(sigma, 0.0), opts).real();
  return out;
}

GeneralizedString mult_convolve(const GeneralizedString& a, const GeneralizedString& b, double X) {
  if (!(X > 0.0)) throw Error(ErrorKind::InvalidArgument, "truncation must be positive");
  require_covered(a, X / b.x0());
  require_covered(b, X / a.x0());
  std::vector<Atom> out;
  for (const Atom& u : a.atoms()) {
    for (const Atom& v : b.atoms()) {
      const double x = u.x * v.x;
      if (below(X, x)) break;
      out.push_back({x, u.w * v.w});
    }
  }
  const bool finite = a.is_finite_measure() && b.is_finite_measure();
  return GeneralizedString(std::move(out), std::nullopt, finite ? kInf : X);
}

}  // namespace fzeta
