#pragma once

// Command-line front end: simulate, stability, scan, boundary, fixed-points.
//
// Exit codes: 0 success, 1 runtime or numerical failure, 2 usage error.

#include "dicke2/dynamics.hpp"
#include "dicke2/phasescan.hpp"
#include "dicke2/steadystate.hpp"

#include <iosfwd>
#include <string>
#include <string_view>

namespace dicke2::cli {

inline constexpr std::string_view kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kRuntimeFailure = 1, kUsageError = 2 };

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double x);

void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
void write_scan_csv(std::ostream& os, const ScanResult& result);
void write_scan_json(std::ostream& os, const ScanResult& result);
/// One row per lambda1, one column per lambda2; absent values print as nan.
void write_scan_matrix(std::ostream& os, const ScanResult& result, std::string_view field);
void write_boundary_csv(std::ostream& os, const Polyline& line);

/// Worker count from DICKE2_THREADS (0 or unset = auto).
unsigned threads_from_env();

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace dicke2::cli
