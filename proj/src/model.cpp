#include "dicke2/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace dicke2 {

StateVector SystemState::to_vector() const {
  StateVector v;
  v << a1, a2, j1.x(), j1.y(), j1.z(), j2.x(), j2.y(), j2.z();
  return v;
}

SystemState SystemState::from_vector(const StateVector& v) {
  SystemState s;
  s.a1 = v[idx::a1];
  s.a2 = v[idx::a2];
  s.j1 = v.segment<3>(idx::j1x);
  s.j2 = v.segment<3>(idx::j2x);
  return s;
}

std::pair<int, int> phase_signs(PhaseLabel phase) {
  switch (phase) {
  case PhaseLabel::Normal:
    return {-1, -1};
  case PhaseLabel::Inverted:
    return {+1, +1};
  case PhaseLabel::Mixed1:
    return {-1, +1};
  case PhaseLabel::Mixed2:
    return {+1, -1};
  }
  throw std::logic_error("unknown phase label");
}

std::string_view phase_name(PhaseLabel phase) {
  switch (phase) {
  case PhaseLabel::Normal:
    return "normal";
  case PhaseLabel::Inverted:
    return "inverted";
  case PhaseLabel::Mixed1:
    return "mixed1";
  case PhaseLabel::Mixed2:
    return "mixed2";
  }
  throw std::logic_error("unknown phase label");
}

PhaseLabel parse_phase(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (PhaseLabel phase : kAllPhases) {
    if (lower == phase_name(phase)) return phase;
  }
  throw InvalidParameter("unknown phase '" + std::string(name) +
                         "' (expected normal, inverted, mixed1 or mixed2)");
}

const ModelParams& validate_params(const ModelParams& p) {
  auto require = [](bool ok, const char* msg) {
    if (!ok) throw InvalidParameter(msg);
  };
  require(p.omega1 > 0.0, "omega1 must be positive");
  require(p.omega2 > 0.0, "omega2 must be positive");
  require(p.omega_c > 0.0, "omega_c must be positive");
  require(p.kappa > 0.0, "kappa must be positive");
  require(p.n1 > 0.0, "atom number n1 must be positive");
  require(p.n2 > 0.0, "atom number n2 must be positive");
  require(p.lambda1 >= 0.0, "coupling must be non-negative (lambda1)");
  require(p.lambda2 >= 0.0, "coupling must be non-negative (lambda2)");
  require(std::isfinite(p.omega1) && std::isfinite(p.omega2) && std::isfinite(p.omega_c) &&
              std::isfinite(p.kappa) && std::isfinite(p.n1) && std::isfinite(p.n2) &&
              std::isfinite(p.lambda1) && std::isfinite(p.lambda2),
          "parameters must be finite");
  return p;
}

double coupling_from_pump(const DriveParams& d) {
  const double detuning = d.omega_p - d.omega_i;
  if (detuning == 0.0) throw InvalidParameter("pump detuning omega_p - omega_i must be nonzero");
  return d.lambda0 * d.rabi / (2.0 * detuning);
}

StateVector eom_rhs(const StateVector& s, const ModelParams& p) {
  const double g1 = 4.0 * p.lambda1 / std::sqrt(p.n1);
  const double g2 = 4.0 * p.lambda2 / std::sqrt(p.n2);
  const double a1 = s[idx::a1];
  const double a2 = s[idx::a2];

  StateVector d;
  d[idx::a1] = -p.kappa * a1 + p.omega_c * a2;
  d[idx::a2] = -p.kappa * a2 - p.omega_c * a1 - 0.5 * g1 * s[idx::j1x] - 0.5 * g2 * s[idx::j2x];

  d[idx::j1x] = -p.omega1 * s[idx::j1y];
  d[idx::j1y] = p.omega1 * s[idx::j1x] - g1 * a1 * s[idx::j1z];
  d[idx::j1z] = g1 * a1 * s[idx::j1y];

  d[idx::j2x] = -p.omega2 * s[idx::j2y];
  d[idx::j2y] = p.omega2 * s[idx::j2x] - g2 * a1 * s[idx::j2z];
  d[idx::j2z] = g2 * a1 * s[idx::j2y];
  return d;
}

SystemState eom_rhs(const SystemState& s, const ModelParams& p) {
  return SystemState::from_vector(eom_rhs(s.to_vector(), p));
}

std::pair<double, double> spin_norm_residual(const SystemState& s, const ModelParams& p) {
  const double r1 = 0.5 * p.n1;
  const double r2 = 0.5 * p.n2;
  return {s.j1.squaredNorm() - r1 * r1, s.j2.squaredNorm() - r2 * r2};
}

SystemState trivial_fixed_point(PhaseLabel phase, const ModelParams& p) {
  const auto [s1, s2] = phase_signs(phase);
  SystemState s;
  s.j1.z() = s1 * 0.5 * p.n1;
  s.j2.z() = s2 * 0.5 * p.n2;
  return s;
}

double lambda_combined(const ModelParams& p, PhaseLabel phase) {
  const auto [s1, s2] = phase_signs(phase);
  const double t1 = p.lambda1 * p.lambda1 / p.omega1;
  const double t2 = p.lambda2 * p.lambda2 / p.omega2;
  return s1 * t1 + s2 * t2;
}

} // namespace dicke2
