#pragma once

#include <cstddef>
#include <functional>
#include <limits>

#include <Eigen/Dense>

namespace polyflow {

struct IntegratorConfig {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  double dt_init = 1e-4;
  double dt_max = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 2'000'000;

  /// Throws InvalidArgument unless tolerances are positive and
  /// 0 < dt_init <= dt_max.
  void validate() const;
};

using OdeRhs = std::function<void(const Eigen::VectorXd& y, Eigen::VectorXd& dydt)>;

/// One accepted step, handed to the observer: the interval endpoints with
/// their states and derivatives, enough for cubic Hermite dense output.
struct AcceptedStep {
  double t0, t1;
  const Eigen::VectorXd& y0;
  const Eigen::VectorXd& f0;
  const Eigen::VectorXd& y1;
  const Eigen::VectorXd& f1;
};

using StepObserver = std::function<void(const AcceptedStep&)>;

/// Resumable state of an integration: current point, FSAL derivative and the
/// step-size controller memory.
struct IntegratorState {
  double t = 0.0;
  Eigen::VectorXd y;
  Eigen::VectorXd f;
  double dt = 0.0;
  double err_prev = 1e-4;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
};

/// Dormand-Prince 5(4) with proportional-integral step control (Hairer's
/// DOPRI5 controller). Advances `state` to exactly `t_end`, calling
/// `observer` after every accepted step.
///
/// Errors: StepLimitExceeded once `cfg.max_steps` accepted+rejected steps
/// have been taken in total; StepUnderflow when dt drops below
/// 1e-3 * eps * t_end or the state turns non-finite.
void integrate_dopri5(const OdeRhs& rhs, IntegratorState& state, double t_end,
                      const IntegratorConfig& cfg, const StepObserver& observer);

/// Starts a fresh integration state at (t0, y0).
IntegratorState start_integration(const OdeRhs& rhs, double t0, Eigen::VectorXd y0,
                                  const IntegratorConfig& cfg);

/// Cubic Hermite interpolation between (t0, y0, f0) and (t1, y1, f1).
Eigen::VectorXd hermite_interpolate(double t, double t0, const Eigen::VectorXd& y0,
                                    const Eigen::VectorXd& f0, double t1,
                                    const Eigen::VectorXd& y1, const Eigen::VectorXd& f1);

}  // namespace polyflow
