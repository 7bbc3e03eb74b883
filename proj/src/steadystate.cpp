#include "dicke2/steadystate.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace dicke2 {

std::string_view branch_kind_name(BranchKind kind) {
  switch (kind) {
  case BranchKind::Trivial:
    return "trivial";
  case BranchKind::PartialSuperradiant:
    return "partial-superradiant";
  case BranchKind::Superradiant:
    return "superradiant";
  }
  return "?";
}

SystemState state_from_angles(double a1, double theta1, double theta2, const ModelParams& p) {
  SystemState s;
  s.a1 = a1;
  s.a2 = p.kappa * a1 / p.omega_c;
  s.j1 = Eigen::Vector3d(0.5 * p.n1 * std::sin(theta1), 0.0, -0.5 * p.n1 * std::cos(theta1));
  s.j2 = Eigen::Vector3d(0.5 * p.n2 * std::sin(theta2), 0.0, -0.5 * p.n2 * std::cos(theta2));
  return s;
}

namespace {

using Vec3 = Eigen::Vector3d;

// The parametrization satisfies da1/dt = dJx/dt = dJz/dt = 0 identically;
// what remains is the cavity quadrature and the two spin-y equations.
Vec3 reduced_residual(const Vec3& x, const ModelParams& p) {
  const StateVector d = eom_rhs(state_from_angles(x[0], x[1], x[2], p).to_vector(), p);
  return {d[idx::a2], d[idx::j1y], d[idx::j2y]};
}

double wrap_angle(double theta) {
  const double two_pi = 2.0 * std::numbers::pi;
  double w = std::remainder(theta, two_pi); // in [-pi, pi]
  if (w <= -std::numbers::pi) w += two_pi;
  return w;
}

constexpr double kDegenerateCavity = 1e-8;
constexpr double kPoleSine = 1e-9;

Branch classify(const Vec3& x, const ModelParams& p) {
  Branch b;
  const bool pole1 = std::abs(std::sin(x[1])) < kPoleSine;
  const bool pole2 = std::abs(std::sin(x[2])) < kPoleSine;
  const double scale = std::sqrt(std::max(p.n1, p.n2));
  if (std::abs(x[0]) < kDegenerateCavity * scale) {
    b.kind = BranchKind::Trivial;
    const bool up1 = std::cos(x[1]) < 0.0;
    const bool up2 = std::cos(x[2]) < 0.0;
    b.pole_phase = up1 ? (up2 ? PhaseLabel::Inverted : PhaseLabel::Mixed2)
                       : (up2 ? PhaseLabel::Mixed1 : PhaseLabel::Normal);
    return b;
  }
  b.a1_sign = x[0] > 0.0 ? +1 : -1;
  b.kind = (pole1 || pole2) ? BranchKind::PartialSuperradiant : BranchKind::Superradiant;
  return b;
}

// sqrt(a + b) where a + b may come out a few ulps below zero on an exact
// cancellation; genuinely negative sums give no value.
std::optional<double> sqrt_of_sum(double a, double b) {
  const double sum = a + b;
  if (sum >= 0.0) return std::sqrt(sum);
  if (sum >= -8.0 * std::numeric_limits<double>::epsilon() * (std::abs(a) + std::abs(b)))
    return 0.0;
  return std::nullopt;
}

void require_species(int species) {
  if (species != 1 && species != 2) throw std::invalid_argument("species must be 1 or 2");
}

} // namespace

FixedPointSolution solve_superradiant(const ModelParams& p, const SuperradiantSeed& seed,
                                      const NewtonOptions& opts) {
  validate_params(p);
  if (p.lambda1 == 0.0 && p.lambda2 == 0.0)
    throw InvalidParameter("solve_superradiant: at least one coupling must be nonzero");

  Vec3 x(seed.a1, seed.theta1, seed.theta2);
  auto field = [&p](const Vec3& v) { return reduced_residual(v, p); };
  Vec3 f = field(x);
  double norm = f.lpNorm<Eigen::Infinity>();

  int it = 0;
  while (!(norm < opts.tolerance)) {
    if (it >= opts.max_iterations || !std::isfinite(norm)) {
      std::ostringstream msg;
      msg << "solve_superradiant: Newton did not converge after " << it
          << " iterations (residual " << norm << ")";
      throw NewtonError(msg.str(), x, false);
    }
    ++it;
    const Eigen::Matrix3d jac = finite_difference_jacobian(field, x, opts.fd_step);
    Eigen::FullPivLU<Eigen::Matrix3d> lu(jac);
    if (!lu.isInvertible()) throw NewtonError("solve_superradiant: singular Newton matrix", x, true);
    Vec3 step = lu.solve(-f);

    Vec3 trial = x + step;
    Vec3 f_trial = field(trial);
    for (int halvings = 0;
         halvings < opts.max_halvings && !(f_trial.lpNorm<Eigen::Infinity>() <= norm); ++halvings) {
      step *= 0.5;
      trial = x + step;
      f_trial = field(trial);
    }
    x = trial;
    f = f_trial;
    norm = f.lpNorm<Eigen::Infinity>();
  }

  x[1] = wrap_angle(x[1]);
  x[2] = wrap_angle(x[2]);
  FixedPointSolution sol;
  sol.state = state_from_angles(x[0], x[1], x[2], p);
  sol.branch = classify(x, p);
  sol.residual_norm = eom_rhs(sol.state.to_vector(), p).lpNorm<Eigen::Infinity>();
  sol.newton_iterations = it;
  return sol;
}

CriticalCoupling critical_lambda(PhaseLabel phase, int species, double other_lambda,
                                 const ModelParams& p) {
  require_species(species);
  const auto [s1, s2] = phase_signs(phase);
  const int own_sign = species == 1 ? s1 : s2;
  const int other_sign = species == 1 ? s2 : s1;
  const double omega_own = species == 1 ? p.omega1 : p.omega2;
  const double omega_other = species == 1 ? p.omega2 : p.omega1;

  const double offset = (p.kappa * p.kappa + p.omega_c * p.omega_c) * omega_own / (4.0 * p.omega_c);
  const double cross = other_sign * other_lambda * other_lambda * omega_own / omega_other;

  CriticalCoupling c;
  c.branch_sign = -own_sign;
  c.value = sqrt_of_sum(-own_sign * offset, -own_sign * cross);
  return c;
}

std::optional<double> partial_superradiant_jz(const ModelParams& p, int species) {
  require_species(species);
  const double lam = species == 1 ? p.lambda1 : p.lambda2;
  const double n = species == 1 ? p.n1 : p.n2;
  const double omega = species == 1 ? p.omega1 : p.omega2;
  if (!(lam > 0.0)) return std::nullopt;
  const double jz =
      -n * omega * (p.kappa * p.kappa + p.omega_c * p.omega_c) / (8.0 * lam * lam * p.omega_c);
  const double pole = 0.5 * n;
  if (std::abs(jz) > pole * (1.0 + 4.0 * std::numeric_limits<double>::epsilon())) return std::nullopt;
  return jz;
}

std::optional<double> critical_lambda1_given_j2z(const ModelParams& p, double j2z) {
  const double offset = p.omega1 * (p.kappa * p.kappa + p.omega_c * p.omega_c) / (4.0 * p.omega_c);
  const double shift = 2.0 * p.lambda2 * p.lambda2 * p.omega1 * j2z / (p.n2 * p.omega2);
  return sqrt_of_sum(offset, shift);
}

} // namespace dicke2
