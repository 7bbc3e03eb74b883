// Convergence monotonicity: each halving of the tolerances must not move the
// final state further from a tight-tolerance reference run.

#include "dicke2/dynamics.hpp"
#include "support.hpp"

#include <doctest.h>

#include <limits>
#include <random>

using namespace dicke2;
using dicke2::testing::random_on_shell;
using dicke2::testing::random_params;
using dicke2::testing::uniform;
using dicke2::testing::unit_params;

namespace {

void check_monotone(const ModelParams& p, const SystemState& s0) {
  IntegratorConfig cfg;
  cfg.t_final = 10.0;
  cfg.sample_interval = 10.0;
  cfg.rel_tol = 1e-13;
  cfg.abs_tol = 1e-13;
  const StateVector reference = integrate(s0, p, cfg).states.back().to_vector();
  double previous = std::numeric_limits<double>::infinity();
  for (double tol = 1e-6; tol > 1e-10; tol *= 0.5) {
    cfg.rel_tol = tol;
    cfg.abs_tol = 0.01 * tol;
    const double err =
        (integrate(s0, p, cfg).states.back().to_vector() - reference).lpNorm<Eigen::Infinity>();
    INFO("rel_tol = " << tol);
    CHECK(err <= previous);
    previous = err;
  }
}

} // namespace

TEST_CASE("halving the tolerance never increases the endpoint error: moderate couplings") {
  std::mt19937_64 rng(55);
  for (int k = 0; k < 20; ++k) {
    const ModelParams p = unit_params(uniform(rng, 0.0, 1.2), uniform(rng, 0.0, 1.2));
    check_monotone(p, random_on_shell(rng, p));
  }
}

TEST_CASE("halving the tolerance never increases the endpoint error: random parameters") {
  std::mt19937_64 rng(56);
  for (int k = 0; k < 20; ++k) {
    const ModelParams p = random_params(rng);
    check_monotone(p, random_on_shell(rng, p));
  }
}
