#pragma once

// Shared test helpers: seeded random parameter/state generators and
// independent oracles that do not go through the library's code paths.

#include "dicke2/dynamics.hpp"
#include "dicke2/model.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

namespace dicke2::testing {

inline ModelParams unit_params(double l1 = 0.0, double l2 = 0.0) {
  ModelParams p;
  p.lambda1 = l1;
  p.lambda2 = l2;
  return p;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline ModelParams random_params(std::mt19937_64& rng) {
  ModelParams p;
  p.omega1 = uniform(rng, 0.3, 3.0);
  p.omega2 = uniform(rng, 0.3, 3.0);
  p.omega_c = uniform(rng, 0.3, 3.0);
  p.kappa = uniform(rng, 0.2, 2.0);
  p.n1 = uniform(rng, 0.5, 4.0);
  p.n2 = uniform(rng, 0.5, 4.0);
  p.lambda1 = uniform(rng, 0.0, 2.0);
  p.lambda2 = uniform(rng, 0.0, 2.0);
  return p;
}

inline Eigen::Vector3d random_on_sphere(std::mt19937_64& rng, double radius) {
  const double z = uniform(rng, -1.0, 1.0);
  const double phi = uniform(rng, 0.0, 2.0 * std::numbers::pi);
  const double r = std::sqrt(1.0 - z * z);
  return radius * Eigen::Vector3d(r * std::cos(phi), r * std::sin(phi), z);
}

inline SystemState random_on_shell(std::mt19937_64& rng, const ModelParams& p) {
  SystemState s;
  s.a1 = uniform(rng, -1.0, 1.0);
  s.a2 = uniform(rng, -1.0, 1.0);
  s.j1 = random_on_sphere(rng, 0.5 * p.n1);
  s.j2 = random_on_sphere(rng, 0.5 * p.n2);
  return s;
}

/// Equations of motion written directly in complex form: a, J_- and J_z.
inline StateVector complex_rhs_oracle(const StateVector& s, const ModelParams& p) {
  using C = std::complex<double>;
  const C I(0.0, 1.0);
  const C a(s[0], s[1]);
  const C jm1(s[2], -s[3]);
  const C jm2(s[5], -s[6]);
  const C jp1 = std::conj(jm1);
  const C jp2 = std::conj(jm2);
  const double jz1 = s[4];
  const double jz2 = s[7];
  const double r1 = p.lambda1 / std::sqrt(p.n1);
  const double r2 = p.lambda2 / std::sqrt(p.n2);
  const C x = std::conj(a) + a; // a^dagger + a

  const C djz1 = I * r1 * x * (jm1 - jp1);
  const C djz2 = I * r2 * x * (jm2 - jp2);
  const C djm1 = -I * p.omega1 * jm1 + 2.0 * I * r1 * x * jz1;
  const C djm2 = -I * p.omega2 * jm2 + 2.0 * I * r2 * x * jz2;
  const C da = -(p.kappa + I * p.omega_c) * a - I * r1 * (jp1 + jm1) - I * r2 * (jp2 + jm2);

  StateVector d;
  // J_- = Jx - i Jy  =>  dJx = Re(dJ_-), dJy = -Im(dJ_-)
  d << da.real(), da.imag(), djm1.real(), -djm1.imag(), djz1.real(), djm2.real(), -djm2.imag(),
      djz2.real();
  return d;
}

/// Least-squares slope of log|a(t)| over samples with |a| inside [lo, hi],
/// starting from the first entry into the window.
inline double fitted_growth_rate(const Trajectory& traj, double lo, double hi) {
  std::vector<double> ts, ys;
  bool entered = false;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const double amp = std::hypot(traj.states[k].a1, traj.states[k].a2);
    if (!entered && amp >= lo) entered = true;
    if (!entered) continue;
    if (amp > hi) break;
    ts.push_back(traj.times[k]);
    ys.push_back(std::log(amp));
  }
  const double n = static_cast<double>(ts.size());
  if (n < 3) return std::nan("");
  double st = 0, sy = 0, stt = 0, sty = 0;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    st += ts[k];
    sy += ys[k];
    stt += ts[k] * ts[k];
    sty += ts[k] * ys[k];
  }
  return (n * sty - st * sy) / (n * stt - st * st);
}

} // namespace dicke2::testing
