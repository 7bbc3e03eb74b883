#include "dicke2/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace dicke2 {

std::string_view stability_name(Stability s) {
  switch (s) {
  case Stability::Stable:
    return "Stable";
  case Stability::Marginal:
    return "Marginal";
  case Stability::Unstable:
    return "Unstable";
  }
  return "?";
}

Matrix8 jacobian(const StateVector& s, const ModelParams& p) {
  const double g1 = 4.0 * p.lambda1 / std::sqrt(p.n1);
  const double g2 = 4.0 * p.lambda2 / std::sqrt(p.n2);
  const double a1 = s[idx::a1];

  Matrix8 m = Matrix8::Zero();
  m(idx::a1, idx::a1) = -p.kappa;
  m(idx::a1, idx::a2) = p.omega_c;

  m(idx::a2, idx::a1) = -p.omega_c;
  m(idx::a2, idx::a2) = -p.kappa;
  m(idx::a2, idx::j1x) = -0.5 * g1;
  m(idx::a2, idx::j2x) = -0.5 * g2;

  m(idx::j1x, idx::j1y) = -p.omega1;
  m(idx::j1y, idx::a1) = -g1 * s[idx::j1z];
  m(idx::j1y, idx::j1x) = p.omega1;
  m(idx::j1y, idx::j1z) = -g1 * a1;
  m(idx::j1z, idx::a1) = g1 * s[idx::j1y];
  m(idx::j1z, idx::j1y) = g1 * a1;

  m(idx::j2x, idx::j2y) = -p.omega2;
  m(idx::j2y, idx::a1) = -g2 * s[idx::j2z];
  m(idx::j2y, idx::j2x) = p.omega2;
  m(idx::j2y, idx::j2z) = -g2 * a1;
  m(idx::j2z, idx::a1) = g2 * s[idx::j2y];
  m(idx::j2z, idx::j2y) = g2 * a1;
  return m;
}

Matrix8 jacobian(const SystemState& s, const ModelParams& p) {
  return jacobian(s.to_vector(), p);
}

Matrix8 jacobian_fd(const SystemState& s, const ModelParams& p, double h) {
  return finite_difference_jacobian(
      [&p](const StateVector& x) { return eom_rhs(x, p); }, s.to_vector(), h);
}

std::vector<std::complex<double>> eigenvalues(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("eigenvalues: matrix must be square");
  if (!m.allFinite()) throw NumericalError("eigenvalues: matrix has non-finite entries");
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw NumericalError("eigenvalues: QR iteration did not converge");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

namespace {

// Eigenvalues closer than this (relative to the matrix scale) are treated as
// one cluster sharing the cluster-mean real part. A defective eigenvalue of
// multiplicity k is only resolved to O(eps^(1/k)) by the QR iteration, but the
// mean of the perturbed cluster stays accurate to O(eps).
constexpr double kClusterTolerance = 1e-6;

std::vector<std::complex<double>> cluster_averaged(const std::vector<std::complex<double>>& ev,
                                                   double scale) {
  const std::size_t n = ev.size();
  const double tol = kClusterTolerance * std::max(1.0, scale);
  std::vector<std::size_t> label(n);
  std::iota(label.begin(), label.end(), std::size_t{0});
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (label[i] != label[j] && std::abs(ev[i] - ev[j]) < tol) {
          label[i] = label[j] = std::min(label[i], label[j]);
          changed = true;
        }
      }
    }
  }
  std::vector<std::complex<double>> out(ev);
  for (std::size_t c = 0; c < n; ++c) {
    double sum = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (label[i] == c) {
        sum += ev[i].real();
        ++count;
      }
    }
    for (std::size_t i = 0; i < n && count > 0; ++i) {
      if (label[i] == c) out[i].real(sum / count);
    }
  }
  return out;
}

} // namespace

StabilityReport assess(const SystemState& fp, const ModelParams& p) {
  const StateVector x = fp.to_vector();
  const double residual = eom_rhs(x, p).lpNorm<Eigen::Infinity>();
  if (!(residual < kFixedPointTolerance)) {
    std::ostringstream msg;
    msg << "assess: state is not a fixed point (residual max-norm " << residual << ")";
    throw NotAFixedPoint(msg.str(), residual);
  }

  const Matrix8 jac = jacobian(x, p);
  StabilityReport report;
  report.eigenvalues = eigenvalues(jac);

  std::vector<std::complex<double>> sorted =
      cluster_averaged(report.eigenvalues, jac.lpNorm<Eigen::Infinity>());
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return std::abs(a) < std::abs(b); });

  // Each conserved spin norm pins one eigenvalue at the origin.
  constexpr int kConservationLaws = 2;
  auto on_imaginary_axis = [](const std::complex<double>& z) {
    return std::abs(z.real()) < kStructuralZeroTolerance;
  };
  std::vector<std::complex<double>> dynamic;
  for (const auto& z : sorted) {
    if (on_imaginary_axis(z) && std::abs(z.imag()) < kStructuralZeroTolerance &&
        report.structural_zero_count < kConservationLaws) {
      ++report.structural_zero_count;
    } else if (on_imaginary_axis(z) && std::abs(z.imag()) >= kStructuralZeroTolerance) {
      // Undamped precession of a spin combination the cavity does not see.
      ++report.neutral_mode_count;
    } else {
      dynamic.push_back(z);
    }
  }

  report.max_growth_rate = 0.0;
  if (!dynamic.empty()) {
    report.max_growth_rate = std::max_element(dynamic.begin(), dynamic.end(), [](const auto& a,
                                                                                 const auto& b) {
                               return a.real() < b.real();
                             })->real();
  }
  if (std::abs(report.max_growth_rate) < kMarginalTolerance) {
    report.classification = Stability::Marginal;
  } else if (report.max_growth_rate > 0.0) {
    report.classification = Stability::Unstable;
  } else {
    report.classification = Stability::Stable;
  }
  return report;
}

double boundary_value(PhaseLabel phase, double lambda1, double lambda2, const ModelParams& p) {
  const double lam = lambda_combined(p.with_couplings(lambda1, lambda2), phase);
  return -4.0 * p.omega_c * lam - (p.kappa * p.kappa + p.omega_c * p.omega_c);
}

BoundaryRoots omega_pm(PhaseLabel phase, double lambda1, double lambda2, const ModelParams& p) {
  BoundaryRoots roots;
  const double lam = lambda_combined(p.with_couplings(lambda1, lambda2), phase);
  roots.lambda_combined = lam;
  const double disc = 4.0 * lam * lam - p.kappa * p.kappa;
  if (disc < 0.0) return roots;
  // Larger-magnitude root first, the other from the product of roots kappa^2;
  // this form is free of cancellation and odd under lam -> -lam.
  const double centre = -2.0 * lam;
  const double far = centre + std::copysign(std::sqrt(disc), centre);
  const double near = p.kappa * p.kappa / far;
  roots.omega_minus = std::min(far, near);
  roots.omega_plus = std::max(far, near);
  return roots;
}

} // namespace dicke2
