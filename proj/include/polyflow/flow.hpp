#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "polyflow/integrator.hpp"
#include "polyflow/polygon.hpp"

namespace polyflow {

/// Flow exponent and the derived energy exponent alpha = beta + 2.
struct FlowParams {
  double beta = 1.0;
  /// Lower bound delta on sin^2 of every angle, when the caller asserts one.
  std::optional<double> angle_floor_delta;

  double alpha() const { return beta + 2.0; }
  /// Throws InvalidArgument for beta < 0 or delta outside (0, 1].
  void validate() const;
};

/// Plain beta-polygon flow dX/dt = M_X X, or the lambda_1-rescaled flow
/// dY/dtau = -lambda_1 Y + l^{-beta} M_Y Y in which the regular P_1 is an
/// equilibrium.
enum class FlowKind { Plain, Rescaled };

/// Treatment of the translation mode in the rescaled flow. `Free` integrates
/// the flow as written, so the center of mass obeys dq/dtau = -lambda_1 q and
/// any round-off in it grows like exp(-lambda_1 tau). `Pinned` subtracts the
/// mean velocity, which leaves the center fixed and the shape dynamics
/// unchanged; on centered data both modes have the same exact solution.
enum class CenterMode { Free, Pinned };

/// dX_j/dt = l_j^beta (X_{j+1} - X_j) + l_{j-1}^beta (X_{j-1} - X_j).
std::vector<Point> velocity(const Polygon& p, double beta);

/// -lambda_1 Y + l^{-beta} M_Y Y with l = 2 sin(pi/N), lambda_1 = -4 sin^2(pi/N),
/// N = Y.size().
std::vector<Point> rescaled_velocity(const Polygon& y, double beta);

/// Euclidean norm over all vertices, sqrt(sum_j |v_j|^2).
double vector_norm(std::span<const Point> v);

struct TrajectorySample {
  double t;
  Polygon polygon;
  std::vector<Point> velocity;
  /// Running value of int_0^t (beta/2) s^{2/beta+1} |M_X X|^2 ds. Zero for
  /// rescaled runs and for beta = 0, where it is not defined.
  double entropy_integral;
  double energy;      // F_{beta+2}
  double min_sin2;    // min_j sin^2(theta_j)
  Point center_of_mass;
};

/// Time-stamped polygon states, one per accepted integrator step, with
/// cubic Hermite dense output in between. Immutable once produced.
class Trajectory {
 public:
  FlowKind kind() const { return kind_; }
  CenterMode center_mode() const { return center_mode_; }
  double beta() const { return beta_; }
  std::size_t vertex_count() const { return samples_.front().polygon.size(); }
  const IntegratorConfig& config() const { return config_; }

  const std::vector<TrajectorySample>& samples() const { return samples_; }
  const TrajectorySample& front() const { return samples_.front(); }
  const TrajectorySample& back() const { return samples_.back(); }
  double t_begin() const { return samples_.front().t; }
  double t_end() const { return samples_.back().t; }

  std::size_t steps_accepted() const { return resume_.accepted; }
  std::size_t steps_rejected() const { return resume_.rejected; }

  /// Dense output at any t in [t_begin, t_end]; RangeExceeded otherwise.
  Polygon state_at(double t) const;
  /// Flow velocity evaluated at state_at(t).
  std::vector<Point> velocity_at(double t) const;
  /// Entropy integral up to t: the stored value at the preceding sample plus
  /// Simpson's rule over the partial step on the interpolant.
  double entropy_integral_at(double t) const;

 private:
  friend struct TrajectoryBuilder;
  Trajectory(FlowKind kind, CenterMode mode, double beta, IntegratorConfig cfg)
      : kind_(kind), center_mode_(mode), beta_(beta), config_(cfg) {}

  std::size_t interval_index(double t) const;

  FlowKind kind_;
  CenterMode center_mode_;
  double beta_;
  IntegratorConfig config_;
  std::vector<TrajectorySample> samples_;
  std::vector<Eigen::VectorXd> y_;
  std::vector<Eigen::VectorXd> f_;
  IntegratorState resume_;
};

/// Integrates the plain flow from P0 over [0, t_end]. beta = 0 (the linear
/// flow) is accepted; entropy quantities then stay zero.
/// Errors: InvalidArgument for t_end <= 0 or beta < 0; StepLimitExceeded;
/// StepUnderflow.
Trajectory evolve(const Polygon& p0, double beta, double t_end, const IntegratorConfig& cfg = {});

/// Integrates the lambda_1-rescaled flow from Y0 over tau in [0, tau_end].
/// Requires beta > 0 (BetaZero otherwise).
Trajectory evolve_rescaled(const Polygon& y0, double beta, double tau_end,
                           const IntegratorConfig& cfg = {}, CenterMode mode = CenterMode::Free);

/// Continues a trajectory to a later end time with its own configuration.
/// Earlier samples are kept unchanged.
Trajectory extend(const Trajectory& traj, double new_end);

}  // namespace polyflow
