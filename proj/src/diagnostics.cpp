#include "polyflow/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "polyflow/entropy.hpp"
#include "polyflow/random.hpp"
#include "polyflow/self_similar.hpp"

namespace polyflow {

bool is_nonincreasing(std::span<const double> v, double slack) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double tol = slack * std::max(std::abs(v[i - 1]), std::abs(v[i]));
    if (v[i] > v[i - 1] + tol) return false;
  }
  return true;
}

bool is_nondecreasing(std::span<const double> v, double slack) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double tol = slack * std::max(std::abs(v[i - 1]), std::abs(v[i]));
    if (v[i] < v[i - 1] - tol) return false;
  }
  return true;
}

std::vector<TimedPolygon> plain_frame_states(const Trajectory& traj) {
  std::vector<TimedPolygon> out;
  out.reserve(traj.samples().size());
  if (traj.kind() == FlowKind::Plain) {
    for (const auto& s : traj.samples()) out.push_back({s.t, s.polygon});
    return out;
  }
  const int n = static_cast<int>(traj.vertex_count());
  const double l = regular_edge_length(n, 1);
  const double lambda1 = circulant_eigenvalue(n, 1);
  const Point q0 = center_of_mass(traj.front().polygon);
  for (const auto& s : traj.samples()) {
    const double a = std::exp(lambda1 * s.t);
    Polygon x = a * s.polygon;
    // A pinned run keeps Y's center at q0 while the plain solution keeps it
    // at q0 too, so only the centered part is scaled.
    if (traj.center_mode() == CenterMode::Pinned) x += (1.0 - a) * q0;
    out.push_back({t_of_tau(s.t, traj.beta(), l, lambda1), std::move(x)});
  }
  return out;
}

TrajectoryChecks check_trajectory(const Trajectory& traj, const CheckOptions& opts) {
  TrajectoryChecks r;
  const auto states = plain_frame_states(traj);
  const double alpha = traj.beta() + 2.0;
  const Polygon& p0 = states.front().polygon;

  std::vector<double> series(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) series[i] = energy(states[i].polygon, alpha);
  r.energy_nonincreasing = is_nonincreasing(series, opts.slack);

  SeededRng rng(opts.seed);
  const Point c0 = center_of_mass(p0);
  const double half_width = std::max(diameter(p0), 1e-300);
  for (std::size_t q = 0; q < opts.random_points; ++q) {
    const Point center = c0 + Point{rng.uniform(-half_width, half_width),
                                    rng.uniform(-half_width, half_width)};
    for (std::size_t i = 0; i < states.size(); ++i)
      series[i] = p_norm(states[i].polygon - center, alpha);
    r.distance_to_points_nonincreasing =
        r.distance_to_points_nonincreasing && is_nonincreasing(series, opts.slack);
  }

  double drift = 0.0;
  for (const auto& s : states) drift = std::max(drift, std::abs(center_of_mass(s.polygon) - c0));
  const double scale = p_norm(p0, 2.0);
  r.center_drift_relative = scale > 0.0 ? drift / scale : drift;
  r.center_drift_limit = opts.drift_factor * traj.config().rel_tol;

  if (traj.kind() == FlowKind::Plain && traj.beta() > 0.0) {
    for (std::size_t i = 0; i < states.size(); ++i)
      series[i] = traj.samples()[i].entropy_integral;
    r.entropy_integral_nondecreasing = is_nondecreasing(series, opts.slack);
    for (std::size_t i = 0; i < states.size(); ++i)
      series[i] = entropy_rho(traj, c0, traj.samples()[i].t);
    r.rho_nonincreasing = is_nonincreasing(series, opts.slack);
  }
  return r;
}

}  // namespace polyflow
