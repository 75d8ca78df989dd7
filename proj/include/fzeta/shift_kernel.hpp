#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fzeta/parallel.hpp"
#include "fzeta/zeta.hpp"

namespace fzeta {

/// A Dirichlet-series-type function that universality scans translate
/// vertically: zeta, Hurwitz zeta, a Dirichlet L-function, or a finite
/// Dirichlet polynomial with user-supplied coefficients a_1..a_n.
class BaseFunction {
 public:
  struct Zeta {};
  struct Hurwitz { double alpha; };
  struct Dirichlet { DirichletCharacter chi; };
  struct Coefficients { std::vector<cplx> a; };

  static BaseFunction zeta() { return BaseFunction(Zeta{}); }
  static BaseFunction hurwitz(double alpha);
  static BaseFunction dirichlet(DirichletCharacter chi) { return BaseFunction(Dirichlet{std::move(chi)}); }
  static BaseFunction coefficients(std::vector<cplx> a);

  cplx operator()(cplx s, const EvalOptions& opts = {}) const;
  std::string name() const;

  // Upper bound on |f'| over Re(s) >= sigma when one follows from absolute
  // convergence; negative when none is available.
  double derivative_bound(double sigma) const;

  const auto& kind() const noexcept { return kind_; }

 private:
  using Kind = std::variant<Zeta, Hurwitz, Dirichlet, Coefficients>;
  explicit BaseFunction(Kind k) : kind_(std::move(k)) {}
  Kind kind_;
};

/// Absolute index range of a uniform shift grid: tau_k = k * step for
/// first <= k < first + count.
struct ShiftGrid {
  double step = 0.01;
  std::int64_t first = 0;
  std::int64_t count = 0;

  double tau(std::int64_t k) const { return static_cast<double>(k) * step; }
};

/// Values f(points[j] + i tau_k), row-major by k then j. The serial path
/// evaluates every entry directly; the parallel path splits the grid into
/// fixed blocks aligned on absolute indices and advances each Dirichlet term
/// by the rotation (n+alpha)^{-i step} inside a block. Because blocks depend
/// only on absolute indices, the same tau yields bit-identical values whatever
/// range or worker count is requested.
std::vector<cplx> evaluate_shift_grid(const BaseFunction& f, std::span<const cplx> points, const ShiftGrid& grid,
                                      const EvalOptions& opts = {}, Exec exec = Exec::Parallel);

inline constexpr std::int64_t kShiftBlock = 256;

}  // namespace fzeta
