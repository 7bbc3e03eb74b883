#include "dicke2/model.hpp"
#include "support.hpp"

#include <doctest.h>

#include <random>

using namespace dicke2;
using dicke2::testing::complex_rhs_oracle;
using dicke2::testing::random_on_shell;
using dicke2::testing::random_params;
using dicke2::testing::unit_params;

TEST_CASE("validate_params accepts the unit configuration") {
  const ModelParams p = unit_params(0.5, 0.5);
  CHECK_NOTHROW(validate_params(p));
  CHECK(&validate_params(p) == &p);
}

TEST_CASE("validate_params names the violated invariant") {
  ModelParams p = unit_params(0.5, 0.5);
  p.kappa = 0.0;
  CHECK_THROWS_WITH_AS(validate_params(p), "kappa must be positive", InvalidParameter);

  p = unit_params(-0.1, 0.5);
  CHECK_THROWS_WITH_AS(validate_params(p), doctest::Contains("coupling must be non-negative"),
                       InvalidParameter);

  p = unit_params();
  p.n2 = 0.0;
  CHECK_THROWS_WITH_AS(validate_params(p), doctest::Contains("atom number"), InvalidParameter);

  p = unit_params();
  p.omega_c = -1.0;
  CHECK_THROWS_AS(validate_params(p), InvalidParameter);

  p = unit_params();
  p.omega1 = std::nan("");
  CHECK_THROWS_AS(validate_params(p), InvalidParameter);
}

TEST_CASE("coupling_from_pump") {
  CHECK(coupling_from_pump({1.0, 2.0, 3.0, 2.0}) == doctest::Approx(1.0));
  CHECK(coupling_from_pump({0.0, 7.0, 3.0, 2.0}) == 0.0);
  CHECK(coupling_from_pump({0.5, 4.0, 5.0, 3.0}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(coupling_from_pump({1.0, 1.0, 2.0, 2.0}), InvalidParameter);
}

TEST_CASE("phase labels carry their pole signs") {
  CHECK(phase_signs(PhaseLabel::Normal) == std::pair{-1, -1});
  CHECK(phase_signs(PhaseLabel::Inverted) == std::pair{+1, +1});
  CHECK(phase_signs(PhaseLabel::Mixed1) == std::pair{-1, +1});
  CHECK(phase_signs(PhaseLabel::Mixed2) == std::pair{+1, -1});
  for (PhaseLabel ph : kAllPhases) CHECK(parse_phase(phase_name(ph)) == ph);
  CHECK(parse_phase("Mixed1") == PhaseLabel::Mixed1);
  CHECK_THROWS_AS(parse_phase("superradiant"), InvalidParameter);
}

TEST_CASE("eom_rhs examples") {
  SUBCASE("normal pole is a fixed point") {
    const ModelParams p = unit_params(0.7, 1.3);
    CHECK(eom_rhs(trivial_fixed_point(PhaseLabel::Normal, p).to_vector(), p).isZero(0.0));
  }
  SUBCASE("decoupled damped cavity") {
    ModelParams p = unit_params();
    p.kappa = 0.3;
    p.omega_c = 1.7;
    SystemState s = trivial_fixed_point(PhaseLabel::Mixed2, p);
    s.a1 = 1.0;
    const StateVector d = eom_rhs(s.to_vector(), p);
    CHECK(d[idx::a1] == -0.3);
    CHECK(d[idx::a2] == -1.7);
    CHECK(d.tail<6>().isZero(0.0));
  }
  SUBCASE("each spin is orthogonal to its derivative") {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 200; ++k) {
      const ModelParams p = random_params(rng);
      const SystemState s = random_on_shell(rng, p);
      const SystemState d = eom_rhs(s, p);
      const double scale1 = s.j1.norm() * d.j1.norm() + 1e-300;
      const double scale2 = s.j2.norm() * d.j2.norm() + 1e-300;
      CHECK(std::abs(s.j1.dot(d.j1)) <= 1e-12 * scale1);
      CHECK(std::abs(s.j2.dot(d.j2)) <= 1e-12 * scale2);
    }
  }
}

TEST_CASE("real-form right-hand side matches the complex-form oracle") {
  std::mt19937_64 rng(2024);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const ModelParams p = random_params(rng);
    const StateVector s = random_on_shell(rng, p).to_vector();
    const StateVector d = eom_rhs(s, p);
    const StateVector o = complex_rhs_oracle(s, p);
    const double scale = std::max(1.0, o.lpNorm<Eigen::Infinity>());
    worst = std::max(worst, (d - o).lpNorm<Eigen::Infinity>() / scale);
  }
  CHECK(worst < 1e-14);
}

TEST_CASE("spin_norm_residual") {
  const ModelParams p = unit_params();
  const auto pole = spin_norm_residual(trivial_fixed_point(PhaseLabel::Inverted, p), p);
  CHECK(pole.first == 0.0);
  CHECK(pole.second == 0.0);

  SystemState s = trivial_fixed_point(PhaseLabel::Normal, p);
  s.j1 = Eigen::Vector3d(0.3, 0.4, 0.0);
  CHECK(spin_norm_residual(s, p).first == doctest::Approx(0.0).epsilon(1e-15));
  s.j1 = Eigen::Vector3d(0.0, 0.0, 0.6);
  CHECK(spin_norm_residual(s, p).first == doctest::Approx(0.11));
  CHECK(spin_norm_residual(s, p).second == 0.0);
}

TEST_CASE("trivial fixed points") {
  const ModelParams p = unit_params(0.4, 0.9);
  const SystemState normal = trivial_fixed_point(PhaseLabel::Normal, p);
  CHECK(normal.a1 == 0.0);
  CHECK(normal.a2 == 0.0);
  CHECK(normal.j1 == Eigen::Vector3d(0, 0, -0.5));
  CHECK(normal.j2 == Eigen::Vector3d(0, 0, -0.5));

  const SystemState mixed1 = trivial_fixed_point(PhaseLabel::Mixed1, p);
  CHECK(mixed1.j1.z() == -0.5);
  CHECK(mixed1.j2.z() == 0.5);

  std::mt19937_64 rng(5);
  for (int k = 0; k < 100; ++k) {
    const ModelParams q = random_params(rng);
    for (PhaseLabel ph : kAllPhases) {
      CHECK(eom_rhs(trivial_fixed_point(ph, q).to_vector(), q).isZero(0.0));
    }
  }
}

TEST_CASE("lambda_combined") {
  CHECK(lambda_combined(unit_params(0.5, 0.5), PhaseLabel::Normal) == -0.5);
  CHECK(lambda_combined(unit_params(0.8, 0.8), PhaseLabel::Mixed1) == 0.0);
  CHECK(lambda_combined(unit_params(0.0, 0.0), PhaseLabel::Inverted) == 0.0);
  CHECK(lambda_combined(unit_params(0.5, 1.0), PhaseLabel::Mixed2) == doctest::Approx(-0.75));

  // Swapping the species together with their pole signs leaves the value unchanged.
  std::mt19937_64 rng(8);
  for (int k = 0; k < 200; ++k) {
    const ModelParams p = random_params(rng);
    ModelParams swapped = p;
    std::swap(swapped.lambda1, swapped.lambda2);
    std::swap(swapped.omega1, swapped.omega2);
    CHECK(lambda_combined(p, PhaseLabel::Normal) == lambda_combined(swapped, PhaseLabel::Normal));
    CHECK(lambda_combined(p, PhaseLabel::Inverted) == lambda_combined(swapped, PhaseLabel::Inverted));
    CHECK(lambda_combined(p, PhaseLabel::Mixed1) == lambda_combined(swapped, PhaseLabel::Mixed2));
  }
}
