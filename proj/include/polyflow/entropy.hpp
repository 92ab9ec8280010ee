#pragma once

#include <optional>
#include <vector>

#include "polyflow/flow.hpp"

namespace polyflow {

/// rho_{x0}(X, t) = exp[-t^{2/beta} |X(t) - x0|^2 - int_0^t (beta/2) s^{2/beta+1} |M_X X|^2 ds]
/// with |.| the 2-norm over vertices and x0 read as the point polygon.
/// Throws BetaZero when beta = 0 and InvalidArgument for rescaled runs.
double entropy_rho(const Trajectory& traj, Point x0, double t);

struct MonotonicityCheck {
  double numeric_derivative;  // centered difference of rho
  double formula;             // -(2/beta) rho t^{2/beta-1} |X - x0 + (beta/2) t M_X X|^2
  double residual;            // |numeric_derivative - formula|
};

/// Compares a centered difference of rho with the closed-form derivative.
/// Needs [t - h, t + h] inside the trajectory; for beta > 2 also refuses
/// t < dt_init, where t^{2/beta-1} is singular at the origin.
MonotonicityCheck monotonicity_residual(const Trajectory& traj, Point x0, double t, double h = 1e-5);

/// Dilation factors c_k (strictly increasing, positive) and the evaluation
/// time tau of each rescaled flow.
struct RescalingSchedule {
  std::vector<double> c_values;
  double tau = 1.0;

  void validate() const;
};

/// Y^k(tau) = c_k (X(c_k^beta tau) - x0) through the trajectory's dense
/// output. The run is extended on a copy when c_k^beta tau lies beyond it;
/// RangeExceeded if that extension fails.
std::vector<Polygon> dilation_sequence(const Trajectory& traj, Point x0,
                                       const RescalingSchedule& sched);

struct AngleBoundReport {
  bool holds;
  double min_sin2;
  std::optional<double> first_violation_time;
};

/// Checks min over samples and vertices of sin^2(theta_i) >= delta.
AngleBoundReport angle_bound_check(const Trajectory& traj, double delta);

}  // namespace polyflow
