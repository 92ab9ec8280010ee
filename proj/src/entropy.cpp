#include "polyflow/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "polyflow/errors.hpp"

namespace polyflow {

namespace {

void require_entropy_trajectory(const Trajectory& traj) {
  if (traj.beta() == 0.0) throw BetaZero("entropy functional requires beta > 0");
  if (traj.kind() != FlowKind::Plain)
    throw InvalidArgument("entropy functional is defined on the plain flow only");
}

double distance_squared(const Polygon& p, Point x0) {
  double s = 0.0;
  for (const auto& z : p.vertices()) s += std::norm(z - x0);
  return s;
}

}  // namespace

double entropy_rho(const Trajectory& traj, Point x0, double t) {
  require_entropy_trajectory(traj);
  const double beta = traj.beta();
  const Polygon x = traj.state_at(t);
  const double weight = t > 0.0 ? std::pow(t, 2.0 / beta) : 0.0;
  return std::exp(-weight * distance_squared(x, x0) - traj.entropy_integral_at(t));
}

MonotonicityCheck monotonicity_residual(const Trajectory& traj, Point x0, double t, double h) {
  require_entropy_trajectory(traj);
  const double beta = traj.beta();
  if (!(h > 0.0)) throw InvalidArgument("difference step must be positive");
  if (beta > 2.0 && t < traj.config().dt_init)
    throw InvalidArgument("monotonicity formula is singular at t = 0 for beta > 2; need t >= dt_init");
  if (!(t - h >= traj.t_begin() && t + h <= traj.t_end()))
    throw RangeExceeded("centered difference around t = " + std::to_string(t) +
                        " leaves the trajectory range");

  const double numeric = (entropy_rho(traj, x0, t + h) - entropy_rho(traj, x0, t - h)) / (2.0 * h);

  const Polygon x = traj.state_at(t);
  const auto v = velocity(x, beta);
  double bracket = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j)
    bracket += std::norm(x.vertices()[j] - x0 + 0.5 * beta * t * v[j]);
  const double formula =
      -(2.0 / beta) * entropy_rho(traj, x0, t) * std::pow(t, 2.0 / beta - 1.0) * bracket;
  return {numeric, formula, std::abs(numeric - formula)};
}

void RescalingSchedule::validate() const {
  if (c_values.empty()) throw InvalidArgument("rescaling schedule is empty");
  if (!(tau > 0.0)) throw InvalidArgument("rescaling tau must be positive");
  for (std::size_t k = 0; k < c_values.size(); ++k) {
    if (!(c_values[k] > 0.0)) throw InvalidArgument("dilation factors must be positive");
    if (k > 0 && !(c_values[k] > c_values[k - 1]))
      throw InvalidArgument("dilation factors must be strictly increasing");
  }
}

std::vector<Polygon> dilation_sequence(const Trajectory& traj, Point x0,
                                       const RescalingSchedule& sched) {
  sched.validate();
  const double beta = traj.beta();
  if (traj.kind() != FlowKind::Plain) throw InvalidArgument("dilations apply to the plain flow");
  const double t_needed = std::pow(sched.c_values.back(), beta) * sched.tau;

  const Trajectory* source = &traj;
  std::optional<Trajectory> extended;
  if (t_needed > traj.t_end()) {
    try {
      extended = extend(traj, t_needed);
    } catch (const StepLimitExceeded& e) {
      throw RangeExceeded(std::string("dilation_sequence: extending the run failed: ") + e.what());
    }
    source = &*extended;
  }

  std::vector<Polygon> out;
  out.reserve(sched.c_values.size());
  for (double c : sched.c_values) {
    Polygon y = source->state_at(std::pow(c, beta) * sched.tau);
    y -= x0;
    y *= c;
    out.push_back(std::move(y));
  }
  return out;
}

AngleBoundReport angle_bound_check(const Trajectory& traj, double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) throw InvalidArgument("delta must lie in (0, 1]");
  AngleBoundReport r{true, 1.0, std::nullopt};
  for (const auto& s : traj.samples()) {
    r.min_sin2 = std::min(r.min_sin2, s.min_sin2);
    if (s.min_sin2 < delta && r.holds) {
      r.holds = false;
      r.first_violation_time = s.t;
    }
  }
  return r;
}

}  // namespace polyflow
