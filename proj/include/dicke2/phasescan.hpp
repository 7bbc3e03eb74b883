#pragma once

// Dynamical phase diagrams over the (lambda1, lambda2) plane.

#include "dicke2/model.hpp"
#include "dicke2/stability.hpp"

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dicke2 {

struct GridSpec {
  double l1_min = 0.0, l1_max = 1.5;
  int l1_count = 61;
  double l2_min = 0.0, l2_max = 1.5;
  int l2_count = 61;

  /// Inclusive uniform axes: min + i (max - min) / (count - 1).
  double lambda1_at(int i) const;
  double lambda2_at(int j) const;
};

const GridSpec& validate_grid(const GridSpec& g);

struct ScanCell {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  bool superradiant = false;
  double max_growth_rate = 0.0;
  double boundary_b = 0.0;
  std::optional<double> omega_plus;
  std::optional<double> omega_minus;
};

using Polyline = std::vector<std::pair<double, double>>;

struct ScanResult {
  PhaseLabel phase = PhaseLabel::Normal;
  GridSpec grid;
  ModelParams params;
  std::vector<ScanCell> cells; // row-major, lambda1 outer
  Polyline boundary_curve;

  const ScanCell& at(int i, int j) const { return cells[static_cast<std::size_t>(i) * grid.l2_count + j]; }
};

/// Eigen-solver failure inside a scan, tagged with the cell coordinates.
class ScanError : public NumericalError {
public:
  ScanError(const std::string& what, double l1, double l2)
      : NumericalError(what), lambda1(l1), lambda2(l2) {}
  double lambda1;
  double lambda2;
};

ScanCell evaluate_cell(PhaseLabel phase, double lambda1, double lambda2, const ModelParams& p);

/// threads == 0 picks the hardware concurrency. Output does not depend on it.
ScanResult scan(PhaseLabel phase, const GridSpec& grid, const ModelParams& p, unsigned threads = 0);

/// Rectangle [0, l1_max] x [0, l2_max] the boundary polyline is clipped to.
struct BoundaryWindow {
  double l1_max = 1.5;
  double l2_max = 1.5;
};

/// Points of the B = 0 locus, uniformly spaced in the free coordinate.
/// Empty when the locus misses the window.
Polyline analytic_boundary_curve(PhaseLabel phase, const ModelParams& p, int samples,
                                 const BoundaryWindow& window = {});

} // namespace dicke2
