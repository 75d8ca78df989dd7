#include <doctest.h>

#include <cmath>

#include "fzeta/parallel.hpp"
#include "fzeta/shift_kernel.hpp"

using namespace fzeta;

namespace {

const std::vector<cplx> kPoints{{0.75, 0.0}, {0.6, -1.0}, {0.9, 0.5}, {1.7, 0.2}};

std::vector<BaseFunction> bases() {
  return {BaseFunction::zeta(), BaseFunction::hurwitz(1.0 / 3.0), BaseFunction::dirichlet(DirichletCharacter::chi4()),
          BaseFunction::coefficients({1.0, cplx(0.5, 0.5), -0.25, 2.0})};
}

}  // namespace

TEST_CASE("parallel kernel agrees with direct evaluation") {
  const ShiftGrid grid{0.01, 0, 1500};
  for (const auto& f : bases()) {
    const auto par = evaluate_shift_grid(f, kPoints, grid, {}, Exec::Parallel);
    const auto ser = evaluate_shift_grid(f, kPoints, grid, {}, Exec::Serial);
    REQUIRE(par.size() == ser.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < par.size(); ++i) worst = std::max(worst, std::abs(par[i] - ser[i]) / (1 + std::abs(ser[i])));
    CAPTURE(f.name());
    CHECK(worst < 1e-11);
    CHECK(ser[3] == f(kPoints[3]));
  }
}

TEST_CASE("kernel values depend only on the absolute shift index") {
  const auto f = BaseFunction::zeta();
  const auto whole = evaluate_shift_grid(f, kPoints, ShiftGrid{0.01, -300, 1000});
  const auto part = evaluate_shift_grid(f, kPoints, ShiftGrid{0.01, 17, 400});
  const std::size_t np = kPoints.size();
  for (std::size_t k = 0; k < 400; ++k) {
    for (std::size_t j = 0; j < np; ++j) REQUIRE(part[k * np + j] == whole[(k + 317) * np + j]);
  }
}

TEST_CASE("kernel output is independent of the worker count") {
  const ShiftGrid grid{0.02, 0, 3000};
  for (const auto& f : bases()) {
    set_worker_count(1);
    const auto one = evaluate_shift_grid(f, kPoints, grid);
    set_worker_count(3);
    const auto three = evaluate_shift_grid(f, kPoints, grid);
    CHECK(one == three);
  }
  set_worker_count(1);
  CHECK(worker_count() == 1);
}

TEST_CASE("empty grids") {
  CHECK(evaluate_shift_grid(BaseFunction::zeta(), kPoints, ShiftGrid{0.01, 0, 0}).empty());
  CHECK(evaluate_shift_grid(BaseFunction::zeta(), {}, ShiftGrid{0.01, 0, 10}).empty());
}
