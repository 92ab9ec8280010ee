#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "polyflow/flow.hpp"

namespace polyflow {

/// True when every element is <= its predecessor up to
/// slack * max(|previous|, |next|).
bool is_nonincreasing(std::span<const double> v, double slack = 1e-12);
bool is_nondecreasing(std::span<const double> v, double slack = 1e-12);

struct TimedPolygon {
  double t;
  Polygon polygon;
};

/// Sample states expressed as solutions of the plain flow. For a free
/// rescaled run Y(tau) started from X(0) = Y(0), the plain solution is
/// X(t) = a(t) Y(tau(t)) with a = exp(lambda_1 tau); a pinned run maps to
/// a (Y - q0) + q0 with q0 the initial center.
std::vector<TimedPolygon> plain_frame_states(const Trajectory& traj);

struct CheckOptions {
  std::size_t random_points = 10;
  std::uint64_t seed = 11;
  double slack = 1e-12;
  /// Center-of-mass drift limit as a multiple of rel_tol, relative to |P0|_2.
  double drift_factor = 10.0;
};

/// Conservation and monotonicity checks on one trajectory, evaluated in the
/// plain-flow frame.
struct TrajectoryChecks {
  bool energy_nonincreasing = true;
  bool distance_to_points_nonincreasing = true;  // |X - Q|_{beta+2} for random Q
  bool entropy_integral_nondecreasing = true;
  bool rho_nonincreasing = true;                 // plain runs with beta > 0 only
  double center_drift_relative = 0.0;
  double center_drift_limit = 0.0;

  bool center_conserved() const { return center_drift_relative <= center_drift_limit; }
  bool all_pass() const {
    return energy_nonincreasing && distance_to_points_nonincreasing &&
           entropy_integral_nondecreasing && rho_nonincreasing && center_conserved();
  }
};

TrajectoryChecks check_trajectory(const Trajectory& traj, const CheckOptions& opts = {});

}  // namespace polyflow
