#pragma once

// Linear stability of fixed points: analytic and finite-difference
// Jacobians, the dense eigenvalue kernel, growth-rate classification and the
// closed-form zero-eigenvalue boundary and omega+- roots.

#include "dicke2/model.hpp"

#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

namespace dicke2 {

class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised by assess() when the input is not a fixed point.
class NotAFixedPoint : public NumericalError {
public:
  NotAFixedPoint(const std::string& what, double residual)
      : NumericalError(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

private:
  double residual_;
};

inline constexpr double kFixedPointTolerance = 1e-8;
inline constexpr double kStructuralZeroTolerance = 1e-10;
inline constexpr double kMarginalTolerance = 1e-8;

enum class Stability { Stable, Marginal, Unstable };

std::string_view stability_name(Stability s);

struct StabilityReport {
  std::vector<std::complex<double>> eigenvalues;
  int structural_zero_count = 0;
  // Purely imaginary nonzero eigenvalues (dark spin precession), excluded
  // from the growth rate like the structural zeros.
  int neutral_mode_count = 0;
  double max_growth_rate = 0.0;
  Stability classification = Stability::Stable;
};

struct BoundaryRoots {
  std::optional<double> omega_minus;
  std::optional<double> omega_plus;
  double lambda_combined = 0.0;

  bool has_roots() const { return omega_plus.has_value(); }
};

Matrix8 jacobian(const StateVector& s, const ModelParams& p);
Matrix8 jacobian(const SystemState& s, const ModelParams& p);

/// Central-difference Jacobian of an arbitrary vector field.
template <typename Field, int N>
Eigen::Matrix<double, N, N> finite_difference_jacobian(Field&& f,
                                                       const Eigen::Matrix<double, N, 1>& x,
                                                       double h) {
  if (!(h > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  Eigen::Matrix<double, N, N> m(x.size(), x.size());
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    Eigen::Matrix<double, N, 1> xp = x;
    Eigen::Matrix<double, N, 1> xm = x;
    xp[k] += h;
    xm[k] -= h;
    m.col(k) = (f(xp) - f(xm)) / (2.0 * h);
  }
  return m;
}

Matrix8 jacobian_fd(const SystemState& s, const ModelParams& p, double h);

/// All eigenvalues of a real square matrix; throws NumericalError if the
/// QR iteration fails or an entry is not finite.
std::vector<std::complex<double>> eigenvalues(const Eigen::MatrixXd& m);

StabilityReport assess(const SystemState& fp, const ModelParams& p);

/// B = -4 omega_c Lambda - (kappa^2 + omega_c^2); B > 0 is the zero-eigenvalue
/// instability region of the phase's pole.
double boundary_value(PhaseLabel phase, double lambda1, double lambda2, const ModelParams& p);

/// omega+- = -2 Lambda +- sqrt(4 Lambda^2 - kappa^2); empty when the roots are complex.
BoundaryRoots omega_pm(PhaseLabel phase, double lambda1, double lambda2, const ModelParams& p);

} // namespace dicke2
