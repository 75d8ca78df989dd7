#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fzeta/types.hpp"

namespace fzeta {

/// Head length and truncation bound of an Euler-Maclaurin evaluation of the
/// Hurwitz zeta function: sum_{n<N} (n+a)^{-s} plus the integral, the half
/// term and eight Bernoulli corrections at a = N + alpha.
struct EulerMaclaurinPlan {
  std::int64_t head_terms = 0;
  double remainder_bound = 0.0;
};

inline constexpr int kBernoulliCorrections = 8;

// Smallest head length (grown geometrically from 10 + |Im s|/(2 pi)) whose
// remainder bound meets opts.abs_tol. Throws ToleranceUnreachable.
EulerMaclaurinPlan plan_euler_maclaurin(cplx s, double alpha, const EvalOptions& opts);

// Remainder bound for a given head length: twice the first omitted Bernoulli
// term, inflated by |s+2M+1|/(Re s+2M+1) when that ratio exceeds one.
double euler_maclaurin_bound(cplx s, double alpha, std::int64_t head_terms);

// Tail part (everything after the head sum) of the Euler-Maclaurin formula.
cplx euler_maclaurin_tail(cplx s, double alpha, std::int64_t head_terms);

struct Estimate {
  cplx value;
  double error_bound;  // truncation bound plus a rounding allowance
};

Estimate zeta_estimate(cplx s, const EvalOptions& opts = {});
cplx zeta(cplx s, const EvalOptions& opts = {});

/// Completed zeta pi^{-s/2} Gamma(s/2) zeta(s). At the trivial zeros s = -2n the
/// finite limit is returned.
cplx completed_xi(cplx s, const EvalOptions& opts = {});

/// prod_{p <= n_max} (1 - p^{-s})^{-1} as a finite product.
cplx euler_product_truncated(cplx s, std::int64_t n_max);

Estimate hurwitz_estimate(cplx s, double alpha, const EvalOptions& opts = {});
cplx hurwitz_zeta(cplx s, double alpha, const EvalOptions& opts = {});

/// Derivative of zeta by a five-point central stencil; used where only a
/// Lipschitz estimate is needed.
cplx zeta_derivative(cplx s, double h = 1e-3, const EvalOptions& opts = {});

/// A Dirichlet character stored as its value table on residues 0..q-1.
class DirichletCharacter {
 public:
  // Validates the table: zero exactly off the units, unimodular on the units,
  // completely multiplicative. Throws InvalidArgument otherwise.
  static DirichletCharacter from_values(std::int64_t modulus, std::vector<cplx> values);
  static DirichletCharacter principal(std::int64_t modulus);
  // The non-principal character mod 4.
  static DirichletCharacter chi4();

  std::int64_t modulus() const noexcept { return modulus_; }
  std::span<const cplx> values() const noexcept { return values_; }
  cplx operator()(std::int64_t n) const;
  bool is_principal() const noexcept { return principal_; }

 private:
  DirichletCharacter(std::int64_t q, std::vector<cplx> v, bool principal)
      : modulus_(q), values_(std::move(v)), principal_(principal) {}

  std::int64_t modulus_;
  std::vector<cplx> values_;
  bool principal_;
};

/// L(s, chi) = q^{-s} sum_{a=1}^{q} chi(a) zeta(s, a/q).
cplx dirichlet_l(cplx s, const DirichletCharacter& chi, const EvalOptions& opts = {});

/// sum_{j <= n_max} mu(j) j^{-s}.
cplx inverse_zeta_series(cplx s, std::int64_t n_max);

}  // namespace fzeta
