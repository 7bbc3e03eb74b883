#pragma once

// Time integration of the mean-field equations with spin-norm drift
// monitoring and fixed-point settling.

#include "dicke2/model.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace dicke2 {

struct IntegratorConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = 0.5;
  double t_final = 100.0;
  double sample_interval = 0.1;
};

const IntegratorConfig& validate_config(const IntegratorConfig& cfg);

/// Step-size underflow; carries the model time at which it happened.
class IntegrationError : public std::runtime_error {
public:
  IntegrationError(const std::string& what, double time) : std::runtime_error(what), time_(time) {}
  double time() const noexcept { return time_; }

private:
  double time_;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<SystemState> states;
  // Running max of |spin_norm_residual| / (n_i/2)^2 per species, one entry per sample.
  std::vector<std::pair<double, double>> drift;
};

inline constexpr double kDefaultSettleThreshold = 1e-9;

struct SettleResult {
  bool converged = false;
  SystemState final_state;
  double residual_norm = 0.0;
  double elapsed_time = 0.0;
};

/// Adaptive Dormand-Prince 8(5,3) integration sampled every cfg.sample_interval
/// (plus a final sample at t_final).
Trajectory integrate(const SystemState& s0, const ModelParams& p, const IntegratorConfig& cfg);

/// Integrates until the max-norm of the right-hand side drops below
/// threshold, or until t_final.
SettleResult settle(const SystemState& s0, const ModelParams& p, const IntegratorConfig& cfg,
                    double threshold = kDefaultSettleThreshold);

/// Relative spin-norm residuals |r_i| / (n_i/2)^2 of one state.
std::pair<double, double> relative_spin_residual(const SystemState& s, const ModelParams& p);

/// Max relative conservation drift per species over the trajectory.
std::pair<double, double> drift_report(const Trajectory& t);

} // namespace dicke2
