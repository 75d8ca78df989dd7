#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fzeta/types.hpp"

namespace fzeta {

/// Point mass w at reciprocal scale x.
struct Atom {
  double x;
  cplx w;

  bool operator==(const Atom&) const = default;
};

/// Families whose geometric zeta function is known in closed form.
namespace family {
// Atoms b^j with weight m^{j-1}, j >= 1; zeta = b^{-s} / (1 - m b^{-s}).
struct SelfSimilar {
  double scale;         // b = 1/r > 1
  double multiplicity;  // m > 0
};
struct Harmonic {};
struct PrimeHarmonic {
  std::int64_t p;
};
struct PrimeString {};
struct MoebiusString {};
// A finite measure given explicitly; its zeta function is the entire atom sum.
struct Finite {
  std::vector<Atom> atoms;
};
}  // namespace family

using ClosedForm = std::variant<family::SelfSimilar, family::Harmonic, family::PrimeHarmonic, family::PrimeString,
                                family::MoebiusString, family::Finite>;

ClosedForm cantor_form();
std::string closed_form_name(const ClosedForm& cf);

// Relative tolerance under which two reciprocal scales are the same atom.
inline constexpr double kAtomMergeTolerance = 1e-12;

/// Sorts by scale, sums weights of coincident scales, drops zero weights.
std::vector<Atom> merge_atoms(std::vector<Atom> atoms);

/// A generalized fractal string truncated to its atoms with x <= covered_to.
/// Atoms are strictly ascending, nonzero, and no smaller than x0.
class GeneralizedString {
 public:
  GeneralizedString(std::vector<Atom> atoms, std::optional<ClosedForm> closed_form, double covered_to);

  /// A finite user-supplied measure; x0 is its smallest scale.
  static GeneralizedString from_atoms(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  const std::optional<ClosedForm>& closed_form() const noexcept { return closed_form_; }
  double x0() const noexcept { return x0_; }
  double covered_to() const noexcept { return covered_to_; }
  bool is_finite_measure() const noexcept { return covered_to_ == std::numeric_limits<double>::infinity(); }
  bool is_positive() const noexcept;

  bool operator==(const GeneralizedString& other) const;

 private:
  std::vector<Atom> atoms_;
  std::optional<ClosedForm> closed_form_;
  double x0_;
  double covered_to_;
};

/// All atoms of the family with x <= X. Throws EmptyTruncation below the first atom.
GeneralizedString builtin_string(const ClosedForm& kind, double X);

/// N(x) = eta(0,x) + eta({x})/2.
cplx counting_function(const GeneralizedString& eta, double x);

/// sum of w x^{-s} over the first n_max atoms.
cplx geometric_zeta_atoms(const GeneralizedString& eta, cplx s, std::size_t n_max);

/// Meromorphic closed form (or the exact atom sum of a finite measure).
cplx geometric_zeta_closed(const GeneralizedString& eta, cplx s);
cplx closed_form_zeta(const ClosedForm& cf, cplx s);

/// sum over atoms with x > X of |w| x^{-sigma}; requires sigma above the dimension.
double abs_tail_bound(const ClosedForm& cf, double sigma, double X);

struct Dimension {
  double value;
  bool estimate;  // true when obtained by the log-log slope fit
};

/// Exact abscissa from the closed form, otherwise the least-squares slope of
/// log|N| against log x over the top decade of available scales.
Dimension dimension(const GeneralizedString& eta);

/// Atoms of nu(A) = sum_k eta(A/k) with scale <= X.
GeneralizedString spectral_measure_atoms(const GeneralizedString& eta, double X);

/// N_nu(x) = sum_{n <= x/x0} N_eta(x/n).
cplx spectral_counting(const GeneralizedString& eta, double x);

/// zeta_nu(s) = zeta_eta(s) zeta(s).
cplx spectral_zeta(const GeneralizedString& eta, cplx s, const EvalOptions& opts = {});

struct SpectralZetaCheck {
  cplx product;       // zeta_eta(s) zeta(s)
  cplx direct;        // Dirichlet sum over spectral atoms <= X
  double discrepancy;
  double tail_bound;  // bound on the spectral atoms beyond X
};

/// Compares the product formula with a direct sum over spectral atoms <= X.
/// Needs a closed form and Re(s) > max(dimension, 1).
SpectralZetaCheck spectral_zeta_check(const GeneralizedString& eta, cplx s, double X, const EvalOptions& opts = {});

/// Multiplicative convolution: atoms x_a x_b <= X with weight w_a w_b.
GeneralizedString mult_convolve(const GeneralizedString& a, const GeneralizedString& b, double X);

/// The unit mass at 1, identity for mult_convolve.
GeneralizedString unit_string();

}  // namespace fzeta
