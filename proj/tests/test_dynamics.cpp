#include "dicke2/dynamics.hpp"
#include "dicke2/stability.hpp"
#include "support.hpp"

#include <doctest.h>

#include <random>

using namespace dicke2;
using dicke2::testing::fitted_growth_rate;
using dicke2::testing::random_on_shell;
using dicke2::testing::random_params;
using dicke2::testing::uniform;
using dicke2::testing::unit_params;

namespace {

IntegratorConfig with_final(double t_final, double sample = 0.1) {
  IntegratorConfig cfg;
  cfg.t_final = t_final;
  cfg.sample_interval = sample;
  return cfg;
}

} // namespace

TEST_CASE("validate_config") {
  CHECK_NOTHROW(validate_config(IntegratorConfig{}));
  for (auto mutate : std::initializer_list<void (*)(IntegratorConfig&)>{
           [](IntegratorConfig& c) { c.rel_tol = 0.0; }, [](IntegratorConfig& c) { c.abs_tol = -1.0; },
           [](IntegratorConfig& c) { c.t_final = 0.0; },
           [](IntegratorConfig& c) { c.sample_interval = 0.0; },
           [](IntegratorConfig& c) { c.max_step = 0.0; }}) {
    IntegratorConfig c;
    mutate(c);
    CHECK_THROWS_AS(validate_config(c), InvalidParameter);
  }
}

TEST_CASE("sampling cadence") {
  const Trajectory t = integrate(trivial_fixed_point(PhaseLabel::Normal, unit_params()), unit_params(),
                                 with_final(1.05, 0.1));
  REQUIRE(t.times.size() == 12);
  REQUIRE(t.states.size() == t.times.size());
  REQUIRE(t.drift.size() == t.times.size());
  CHECK(t.times.front() == 0.0);
  CHECK(t.times[3] == doctest::Approx(0.3));
  CHECK(t.times.back() == 1.05);
  for (std::size_t k = 1; k < t.times.size(); ++k) CHECK(t.times[k] > t.times[k - 1]);
}

TEST_CASE("decoupled cavity decays exactly") {
  ModelParams p = unit_params();
  p.omega_c = 2.3;
  SystemState s = trivial_fixed_point(PhaseLabel::Normal, p);
  s.a1 = 1.0;
  const Trajectory t = integrate(s, p, with_final(5.0));
  const SystemState& last = t.states.back();
  CHECK(std::abs(std::hypot(last.a1, last.a2) - std::exp(-5.0)) < 1e-8);
  // Phase rotates at omega_c: a = e^{-(kappa + i omega_c) t}.
  CHECK(last.a1 == doctest::Approx(std::exp(-5.0) * std::cos(2.3 * 5.0)).epsilon(1e-6));
  CHECK(last.a2 == doctest::Approx(-std::exp(-5.0) * std::sin(2.3 * 5.0)).epsilon(1e-6));
}

TEST_CASE("free precession") {
  ModelParams p = unit_params();
  p.omega1 = 0.7;
  p.omega2 = 1.9;
  SystemState s;
  s.j1 = Eigen::Vector3d(0.3, 0.0, -0.4);
  s.j2 = Eigen::Vector3d(0.0, 0.4, 0.3);
  const Trajectory t = integrate(s, p, with_final(100.0, 1.0));
  for (std::size_t k = 0; k < t.times.size(); ++k) {
    const double tt = t.times[k];
    const SystemState& x = t.states[k];
    CHECK(x.j1.z() == -0.4);
    CHECK(x.j2.z() == 0.3);
    // dJx = -omega Jy, dJy = omega Jx
    CHECK(std::abs(x.j1.x() - 0.3 * std::cos(0.7 * tt)) < 1e-7);
    CHECK(std::abs(x.j1.y() - 0.3 * std::sin(0.7 * tt)) < 1e-7);
    CHECK(std::abs(x.j2.x() + 0.4 * std::sin(1.9 * tt)) < 1e-7);
  }
  for (const SystemState& x : t.states) {
    CHECK(std::abs(x.j1.norm() - 0.5) < 1e-10 * 0.5);
    CHECK(std::abs(x.j2.norm() - 0.5) < 1e-10 * 0.5);
  }
}

TEST_CASE("early growth rate matches the leading eigenvalue") {
  const ModelParams p = unit_params(0.8, 0.8);
  const SystemState pole = trivial_fixed_point(PhaseLabel::Normal, p);
  const double rate = assess(pole, p).max_growth_rate;
  REQUIRE(rate > 0.0);
  SystemState s = pole;
  s.a1 = 1e-6;
  const Trajectory t = integrate(s, p, with_final(std::log(1e5) / rate + 20.0, 0.01));
  const double fitted = fitted_growth_rate(t, 1e-4, 1e-2);
  CHECK(std::abs(fitted - rate) < 0.05 * rate);
}

TEST_CASE("settle") {
  SUBCASE("exact fixed point converges immediately") {
    const ModelParams p = unit_params(0.3, 0.2);
    const SettleResult r = settle(trivial_fixed_point(PhaseLabel::Normal, p), p, with_final(10.0));
    CHECK(r.converged);
    CHECK(r.residual_norm == 0.0);
    CHECK(r.elapsed_time == 0.0);
  }
  SUBCASE("perturbed mixed pole relaxes to the partial superradiant state") {
    const ModelParams p = unit_params(0.0, 1.0);
    SystemState s = trivial_fixed_point(PhaseLabel::Mixed1, p);
    s.a1 += 1e-3;
    const SettleResult r = settle(s, p, with_final(400.0));
    REQUIRE(r.converged);
    CHECK(r.residual_norm < kDefaultSettleThreshold);
    CHECK(std::abs(r.final_state.j2.z() + 0.25) < 1e-6);
    CHECK(r.final_state.j1.z() == -0.5);
  }
  SUBCASE("undamped precession never settles") {
    const ModelParams p = unit_params();
    SystemState s;
    s.j1 = Eigen::Vector3d(0.3, 0.0, -0.4);
    s.j2 = Eigen::Vector3d(0.0, 0.0, -0.5);
    const SettleResult r = settle(s, p, with_final(50.0));
    CHECK_FALSE(r.converged);
    CHECK(r.elapsed_time == doctest::Approx(50.0));
    CHECK(r.residual_norm > 0.1);
  }
}

TEST_CASE("drift_report") {
  CHECK_THROWS_AS(drift_report(Trajectory{}), std::invalid_argument);

  const ModelParams p = unit_params(0.6, 0.4);
  std::mt19937_64 rng(6);
  const SystemState on_shell = random_on_shell(rng, p);
  const Trajectory single = integrate(on_shell, p, with_final(0.05, 1.0));
  Trajectory first_only;
  first_only.times = {single.times.front()};
  first_only.states = {single.states.front()};
  first_only.drift = {single.drift.front()};
  const auto zero = drift_report(first_only);
  CHECK(zero.first < 1e-15);
  CHECK(zero.second < 1e-15);

  // The norm is conserved on any shell, so off-shell drift stays at its
  // initial value.
  SystemState off = on_shell;
  off.j1 *= 1.2;
  off.j2 *= 0.9;
  const auto initial = relative_spin_residual(off, p);
  const auto d = drift_report(integrate(off, p, with_final(20.0)));
  CHECK(d.first == doctest::Approx(std::abs(initial.first)).epsilon(1e-8));
  CHECK(d.second == doctest::Approx(std::abs(initial.second)).epsilon(1e-8));
  CHECK(std::abs(initial.first) == doctest::Approx(0.44));
}

TEST_CASE("spin norms are conserved over long runs") {
  std::mt19937_64 rng(100);
  for (int k = 0; k < 25; ++k) {
    const ModelParams p = random_params(rng);
    const Trajectory t = integrate(random_on_shell(rng, p), p, with_final(100.0 / p.kappa, 1.0));
    const auto d = drift_report(t);
    CHECK(d.first < 1e-8);
    CHECK(d.second < 1e-8);
  }
}

TEST_CASE("step-size underflow reports the failure time") {
  // No step can meet a tolerance below round-off.
  const ModelParams p = unit_params(0.8, 0.8);
  SystemState s = trivial_fixed_point(PhaseLabel::Normal, p);
  s.a1 = 0.5;
  IntegratorConfig cfg = with_final(1.0);
  cfg.rel_tol = 1e-300;
  cfg.abs_tol = 1e-300;
  try {
    integrate(s, p, cfg);
    FAIL("expected an IntegrationError");
  } catch (const IntegrationError& e) {
    CHECK(e.time() >= 0.0);
    CHECK(e.time() < 1.0);
    CHECK(std::string(e.what()).find("underflow") != std::string::npos);
  }
}
