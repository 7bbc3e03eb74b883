#include "dicke2/phasescan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace dicke2 {

double GridSpec::lambda1_at(int i) const {
  return l1_min + static_cast<double>(i) * (l1_max - l1_min) / static_cast<double>(l1_count - 1);
}

double GridSpec::lambda2_at(int j) const {
  return l2_min + static_cast<double>(j) * (l2_max - l2_min) / static_cast<double>(l2_count - 1);
}

const GridSpec& validate_grid(const GridSpec& g) {
  if (g.l1_count < 2 || g.l2_count < 2) throw InvalidParameter("grid counts must be at least 2");
  if (!(g.l1_min >= 0.0) || !(g.l2_min >= 0.0))
    throw InvalidParameter("grid minima must be non-negative");
  if (!(g.l1_max > g.l1_min) || !(g.l2_max > g.l2_min))
    throw InvalidParameter("grid maxima must exceed minima");
  return g;
}

ScanCell evaluate_cell(PhaseLabel phase, double lambda1, double lambda2, const ModelParams& p) {
  const ModelParams q = p.with_couplings(lambda1, lambda2);
  const StabilityReport report = assess(trivial_fixed_point(phase, q), q);
  const BoundaryRoots roots = omega_pm(phase, lambda1, lambda2, q);

  ScanCell cell;
  cell.lambda1 = lambda1;
  cell.lambda2 = lambda2;
  cell.max_growth_rate = report.max_growth_rate;
  cell.superradiant = report.max_growth_rate > kMarginalTolerance;
  cell.boundary_b = boundary_value(phase, lambda1, lambda2, q);
  cell.omega_plus = roots.omega_plus;
  cell.omega_minus = roots.omega_minus;
  return cell;
}

ScanResult scan(PhaseLabel phase, const GridSpec& grid, const ModelParams& p, unsigned threads) {
  validate_params(p);
  validate_grid(grid);

  ScanResult result;
  result.phase = phase;
  result.grid = grid;
  result.params = p;
  const std::size_t total = static_cast<std::size_t>(grid.l1_count) * grid.l2_count;
  result.cells.resize(total);

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::size_t error_index = std::numeric_limits<std::size_t>::max();
  std::exception_ptr error;

  auto worker = [&]() {
    for (std::size_t k = next.fetch_add(1); k < total; k = next.fetch_add(1)) {
      const int i = static_cast<int>(k / grid.l2_count);
      const int j = static_cast<int>(k % grid.l2_count);
      const double l1 = grid.lambda1_at(i);
      const double l2 = grid.lambda2_at(j);
      try {
        result.cells[k] = evaluate_cell(phase, l1, l2, p);
      } catch (const std::exception& e) {
        std::lock_guard lock(error_mutex);
        // Report the lowest failing cell so the error is independent of scheduling.
        if (k < error_index) {
          error_index = k;
          error = std::make_exception_ptr(ScanError(
              std::string(e.what()) + " at lambda1=" + std::to_string(l1) +
                  ", lambda2=" + std::to_string(l2),
              l1, l2));
        }
      }
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  result.boundary_curve =
      analytic_boundary_curve(phase, p, std::max(grid.l1_count, grid.l2_count),
                              BoundaryWindow{grid.l1_max, grid.l2_max});
  return result;
}

namespace {

Polyline sample_branch(double lo, double hi, int samples, bool free_is_lambda2,
                       double (*other)(double, const ModelParams&, double), const ModelParams& p,
                       double r0) {
  Polyline line;
  if (!(hi >= lo)) return line;
  line.reserve(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    const double u = k + 1 == samples ? hi : lo + (hi - lo) * k / (samples - 1);
    const double v = other(u, p, r0);
    line.emplace_back(free_is_lambda2 ? std::make_pair(v, u) : std::make_pair(u, v));
  }
  return line;
}

} // namespace

Polyline analytic_boundary_curve(PhaseLabel phase, const ModelParams& p, int samples,
                                 const BoundaryWindow& window) {
  if (samples < 2) throw std::invalid_argument("analytic_boundary_curve: samples must be >= 2");
  validate_params(p);
  // B = 0  <=>  s1 lambda1^2/omega1 + s2 lambda2^2/omega2 = -r0.
  const double r0 = (p.kappa * p.kappa + p.omega_c * p.omega_c) / (4.0 * p.omega_c);

  switch (phase) {
  case PhaseLabel::Inverted:
    return {};
  case PhaseLabel::Normal: {
    // lambda1 = sqrt(omega1 (r0 - lambda2^2/omega2)), decreasing in lambda2.
    const double lo = std::sqrt(p.omega2 * std::max(0.0, r0 - window.l1_max * window.l1_max / p.omega1));
    const double hi = std::min(window.l2_max, std::sqrt(p.omega2 * r0));
    return sample_branch(
        lo, hi, samples, true,
        [](double l2, const ModelParams& q, double r) {
          return std::sqrt(q.omega1 * std::max(0.0, r - l2 * l2 / q.omega2));
        },
        p, r0);
  }
  case PhaseLabel::Mixed1: {
    // lambda1 = sqrt(omega1 (r0 + lambda2^2/omega2)), increasing in lambda2.
    const double room = window.l1_max * window.l1_max / p.omega1 - r0;
    if (room < 0.0) return {};
    const double hi = std::min(window.l2_max, std::sqrt(p.omega2 * room));
    return sample_branch(
        0.0, hi, samples, true,
        [](double l2, const ModelParams& q, double r) {
          return std::sqrt(q.omega1 * (r + l2 * l2 / q.omega2));
        },
        p, r0);
  }
  case PhaseLabel::Mixed2: {
    const double room = window.l2_max * window.l2_max / p.omega2 - r0;
    if (room < 0.0) return {};
    const double hi = std::min(window.l1_max, std::sqrt(p.omega1 * room));
    return sample_branch(
        0.0, hi, samples, false,
        [](double l1, const ModelParams& q, double r) {
          return std::sqrt(q.omega2 * (r + l1 * l1 / q.omega1));
        },
        p, r0);
  }
  }
  return {};
}

} // namespace dicke2
