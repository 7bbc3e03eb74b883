#pragma once

// Steady states: the four pole fixed points, Newton continuation of the
// superradiant branches and the closed-form critical couplings.

#include "dicke2/model.hpp"
#include "dicke2/stability.hpp"

#include <optional>
#include <string>

namespace dicke2 {

enum class BranchKind {
  Trivial,             // empty cavity, both spins at poles
  PartialSuperradiant, // a != 0, one species pinned at a pole
  Superradiant,        // a != 0, both species tilted
};

std::string_view branch_kind_name(BranchKind kind);

struct Branch {
  BranchKind kind = BranchKind::Trivial;
  std::optional<PhaseLabel> pole_phase; // set for Trivial branches
  int a1_sign = 0;                      // sign of Re(a) on superradiant branches
};

struct FixedPointSolution {
  SystemState state;
  Branch branch;
  double residual_norm = 0.0;
  int newton_iterations = 0;
};

/// Seed for the (a1, theta1, theta2) Newton iteration, where
/// J_ix = (n_i/2) sin(theta_i), J_iz = -(n_i/2) cos(theta_i), J_iy = 0.
struct SuperradiantSeed {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double a1 = 0.5;
};

struct NewtonOptions {
  int max_iterations = 100;
  double tolerance = 1e-12;
  double fd_step = 1e-7;
  int max_halvings = 40;
};

/// Newton failure. `last_iterate` holds the final (a1, theta1, theta2).
class NewtonError : public NumericalError {
public:
  NewtonError(const std::string& what, const Eigen::Vector3d& last, bool singular)
      : NumericalError(what), last_iterate_(last), singular_(singular) {}
  const Eigen::Vector3d& last_iterate() const noexcept { return last_iterate_; }
  bool singular() const noexcept { return singular_; }

private:
  Eigen::Vector3d last_iterate_;
  bool singular_;
};

/// The steady-state equations are the vanishing of the right-hand side.
inline StateVector steady_residual(const StateVector& s, const ModelParams& p) {
  return eom_rhs(s, p);
}

/// Shell-respecting state for the angle parametrization.
SystemState state_from_angles(double a1, double theta1, double theta2, const ModelParams& p);

FixedPointSolution solve_superradiant(const ModelParams& p, const SuperradiantSeed& seed,
                                      const NewtonOptions& opts = {});

/// Critical coupling on the zero-eigenvalue boundary of a pole phase.
struct CriticalCoupling {
  std::optional<double> value;
  // Sign carried by the classic closed-form expression: +1 when the species
  // sits at its lower pole, -1 at its upper pole.
  int branch_sign = +1;
};

/// Critical lambda of `species` (1 or 2) given the other coupling. Solves
/// lambda_i^2 = -s_i * omega_i * [(kappa^2+omega_c^2)/(4 omega_c) + s_j lambda_j^2/omega_j];
/// no value when the right-hand side is negative.
CriticalCoupling critical_lambda(PhaseLabel phase, int species, double other_lambda,
                                 const ModelParams& p);

/// J_z of `species` on the branch where the other species is pinned at its
/// lower pole: -n omega (kappa^2+omega_c^2) / (8 lambda^2 omega_c). None when
/// the coupling is zero or |J_z| would exceed n/2.
std::optional<double> partial_superradiant_jz(const ModelParams& p, int species);

/// sqrt(omega1 (kappa^2+omega_c^2)/(4 omega_c) + 2 lambda2^2 omega1 J2z / (n2 omega2)).
std::optional<double> critical_lambda1_given_j2z(const ModelParams& p, double j2z);

} // namespace dicke2
