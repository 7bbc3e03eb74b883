#include "dicke2/dynamics.hpp"

#include "dop853_tableau.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace dicke2 {

const IntegratorConfig& validate_config(const IntegratorConfig& cfg) {
  if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0))
    throw InvalidParameter("integrator tolerances must be positive");
  if (!(cfg.max_step > 0.0)) throw InvalidParameter("max_step must be positive");
  if (!(cfg.t_final > 0.0)) throw InvalidParameter("t_final must be positive");
  if (!(cfg.sample_interval > 0.0)) throw InvalidParameter("sample_interval must be positive");
  return cfg;
}

namespace {

class Dop853 {
public:
  Dop853(const StateVector& y0, const ModelParams& p, const IntegratorConfig& cfg)
      : p_(p), cfg_(cfg), y_(y0), f_(rhs(y0)) {
    h_ = initial_step();
  }

  double time() const { return t_; }
  const StateVector& state() const { return y_; }
  const StateVector& derivative() const { return f_; }

  /// One accepted step that does not pass `limit`.
  void step_towards(double limit) {
    namespace tab = detail::dop853;
    std::array<StateVector, tab::kStages + 1> k;
    for (;;) {
      const double remaining = limit - t_;
      const bool clipped = h_ >= remaining;
      const double h = clipped ? remaining : h_;

      k[0] = f_;
      for (int s = 1; s < tab::kStages; ++s) {
        StateVector incr = StateVector::Zero();
        for (int j = 0; j < s; ++j) incr += tab::A[s][j] * k[j];
        k[s] = rhs(y_ + h * incr);
      }
      StateVector incr = StateVector::Zero();
      for (int j = 0; j < tab::kStages; ++j) incr += tab::B[j] * k[j];
      const StateVector y_new = y_ + h * incr;
      k[tab::kStages] = rhs(y_new);

      StateVector err5 = StateVector::Zero(), err3 = StateVector::Zero();
      for (int j = 0; j <= tab::kStages; ++j) {
        err5 += tab::E5[j] * k[j];
        err3 += tab::E3[j] * k[j];
      }
      const StateVector scale =
          (cfg_.abs_tol + cfg_.rel_tol * y_.cwiseAbs().cwiseMax(y_new.cwiseAbs()).array()).matrix();
      // DOP853 blend of the 5th- and 3rd-order estimates, taken in the max norm.
      const double e5 = err5.cwiseQuotient(scale).cwiseAbs2().maxCoeff();
      const double e3 = err3.cwiseQuotient(scale).cwiseAbs2().maxCoeff();
      const double err = e5 == 0.0 && e3 == 0.0 ? 0.0 : h * e5 / std::sqrt(e5 + 0.01 * e3);

      if (err <= 1.0) {
        t_ = clipped ? limit : t_ + h;
        y_ = y_new;
        f_ = k[tab::kStages];
        // A step shortened to land on `limit` keeps the natural step size.
        if (!clipped) {
          const double factor = err == 0.0 ? 10.0 : std::min(10.0, 0.9 * std::pow(err, -0.125));
          h_ = std::min(cfg_.max_step, h * factor);
        }
        return;
      }
      // A non-finite estimate is treated as a maximal rejection.
      h_ = std::isfinite(err) ? h * std::max(0.2, 0.9 * std::pow(err, -0.125)) : 0.2 * h;
      const double floor = 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t_));
      if (!(h_ >= floor)) {
        std::ostringstream msg;
        msg << "integrate: step size underflow at t = " << t_;
        throw IntegrationError(msg.str(), t_);
      }
    }
  }

private:
  StateVector rhs(const StateVector& y) const { return eom_rhs(y, p_); }

  double initial_step() const {
    const StateVector scale = (cfg_.abs_tol + cfg_.rel_tol * y_.cwiseAbs().array()).matrix();
    const double d0 = y_.cwiseQuotient(scale).norm();
    const double d1 = f_.cwiseQuotient(scale).norm();
    double h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    if (!std::isfinite(h)) h = 1e-6;
    return std::min({h, cfg_.max_step, cfg_.t_final});
  }

  ModelParams p_;
  IntegratorConfig cfg_;
  double t_ = 0.0;
  double h_ = 0.0;
  StateVector y_;
  StateVector f_;
};

} // namespace

std::pair<double, double> relative_spin_residual(const SystemState& s, const ModelParams& p) {
  const auto [r1, r2] = spin_norm_residual(s, p);
  const double q1 = 0.25 * p.n1 * p.n1;
  const double q2 = 0.25 * p.n2 * p.n2;
  return {std::abs(r1) / q1, std::abs(r2) / q2};
}

Trajectory integrate(const SystemState& s0, const ModelParams& p, const IntegratorConfig& cfg) {
  validate_params(p);
  validate_config(cfg);

  Trajectory traj;
  std::pair<double, double> running{0.0, 0.0};
  auto record = [&](double t, const StateVector& y) {
    const SystemState s = SystemState::from_vector(y);
    const auto [d1, d2] = relative_spin_residual(s, p);
    running.first = std::max(running.first, d1);
    running.second = std::max(running.second, d2);
    traj.times.push_back(t);
    traj.states.push_back(s);
    traj.drift.push_back(running);
  };

  Dop853 stepper(s0.to_vector(), p, cfg);
  record(0.0, stepper.state());
  // Sample times are k * interval so they do not accumulate round-off.
  for (long k = 1;; ++k) {
    const double target = std::min(static_cast<double>(k) * cfg.sample_interval, cfg.t_final);
    while (stepper.time() < target) stepper.step_towards(target);
    record(target, stepper.state());
    if (target >= cfg.t_final) break;
  }
  return traj;
}

SettleResult settle(const SystemState& s0, const ModelParams& p, const IntegratorConfig& cfg,
                    double threshold) {
  validate_params(p);
  validate_config(cfg);
  if (!(threshold > 0.0)) throw InvalidParameter("settle threshold must be positive");

  Dop853 stepper(s0.to_vector(), p, cfg);
  SettleResult result;
  for (;;) {
    result.residual_norm = stepper.derivative().lpNorm<Eigen::Infinity>();
    if (result.residual_norm < threshold) {
      result.converged = true;
      break;
    }
    if (stepper.time() >= cfg.t_final) break;
    stepper.step_towards(cfg.t_final);
  }
  result.final_state = SystemState::from_vector(stepper.state());
  result.elapsed_time = stepper.time();
  return result;
}

std::pair<double, double> drift_report(const Trajectory& t) {
  if (t.drift.empty()) throw std::invalid_argument("drift_report: empty trajectory");
  std::pair<double, double> worst{0.0, 0.0};
  for (const auto& [d1, d2] : t.drift) {
    worst.first = std::max(worst.first, d1);
    worst.second = std::max(worst.second, d2);
  }
  return worst;
}

} // namespace dicke2
