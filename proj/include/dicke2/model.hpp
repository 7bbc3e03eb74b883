#pragma once

// Semiclassical two-species open Dicke model: parameters, state layout,
// equations of motion and spin-norm invariants.
//
// Units: hbar = 1, frequencies in units of the cavity decay rate kappa.

#include <Eigen/Dense>

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace dicke2 {

/// Thrown when a parameter set violates a model invariant.
class InvalidParameter : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct ModelParams {
  double omega1 = 1.0;
  double omega2 = 1.0;
  double omega_c = 1.0;
  double kappa = 1.0;
  double n1 = 1.0;
  double n2 = 1.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;

  ModelParams with_couplings(double l1, double l2) const {
    ModelParams p = *this;
    p.lambda1 = l1;
    p.lambda2 = l2;
    return p;
  }
};

/// Transverse-pump drive of one species.
struct DriveParams {
  double lambda0 = 0.0; // single atom-cavity coupling
  double rabi = 0.0;    // pump Rabi frequency
  double omega_p = 0.0; // pump frequency
  double omega_i = 0.0; // atomic transition frequency
};

// Fixed 8-component layout shared by every module.
inline constexpr int kStateDim = 8;
using StateVector = Eigen::Matrix<double, kStateDim, 1>;
using Matrix8 = Eigen::Matrix<double, kStateDim, kStateDim>;

namespace idx {
inline constexpr int a1 = 0, a2 = 1;
inline constexpr int j1x = 2, j1y = 3, j1z = 4;
inline constexpr int j2x = 5, j2y = 6, j2z = 7;
} // namespace idx

struct SystemState {
  double a1 = 0.0;
  double a2 = 0.0;
  Eigen::Vector3d j1 = Eigen::Vector3d::Zero();
  Eigen::Vector3d j2 = Eigen::Vector3d::Zero();

  StateVector to_vector() const;
  static SystemState from_vector(const StateVector& v);
};

enum class PhaseLabel { Normal, Inverted, Mixed1, Mixed2 };

inline constexpr std::array<PhaseLabel, 4> kAllPhases = {
    PhaseLabel::Normal, PhaseLabel::Inverted, PhaseLabel::Mixed1, PhaseLabel::Mixed2};

/// Pole signs (s1, s2) with J_iz = s_i n_i / 2.
std::pair<int, int> phase_signs(PhaseLabel phase);
std::string_view phase_name(PhaseLabel phase);
/// Accepts "normal", "inverted", "mixed1", "mixed2" (case-insensitive).
PhaseLabel parse_phase(std::string_view name);

/// Returns p unchanged, or throws InvalidParameter naming the first violated invariant.
const ModelParams& validate_params(const ModelParams& p);

/// lambda0 * rabi / (2 (omega_p - omega_i)); throws on zero detuning.
double coupling_from_pump(const DriveParams& d);

StateVector eom_rhs(const StateVector& s, const ModelParams& p);
SystemState eom_rhs(const SystemState& s, const ModelParams& p);

/// (|j1|^2 - (n1/2)^2, |j2|^2 - (n2/2)^2)
std::pair<double, double> spin_norm_residual(const SystemState& s, const ModelParams& p);

SystemState trivial_fixed_point(PhaseLabel phase, const ModelParams& p);

/// Signed combined coupling s1 lambda1^2/omega1 + s2 lambda2^2/omega2.
double lambda_combined(const ModelParams& p, PhaseLabel phase);

} // namespace dicke2
