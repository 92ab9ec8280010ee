#include "polyflow/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "polyflow/errors.hpp"

namespace polyflow {

void IntegratorConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
    throw InvalidArgument("integrator tolerances must be positive");
  if (!(dt_init > 0.0)) throw InvalidArgument("dt_init must be positive");
  if (!(dt_init <= dt_max)) throw InvalidArgument("dt_init must not exceed dt_max");
  if (max_steps == 0) throw InvalidArgument("max_steps must be positive");
}

namespace {

// Dormand-Prince 5(4) tableau. The flows are autonomous, so the nodes c_i
// are not needed.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                 a75 = -2187.0 / 6784, a76 = 11.0 / 84;
// Fifth-order weights minus embedded fourth-order weights.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

// PI controller constants from DOPRI5. Per step, dt shrinks by at most
// 1/kFacMin and grows by at most kFacMax.
constexpr double kSafety = 0.9;
constexpr double kBetaPI = 0.04;
constexpr double kExpo = 0.2 - kBetaPI * 0.75;
constexpr double kFacMin = 0.2;
constexpr double kFacMax = 10.0;

}  // namespace

IntegratorState start_integration(const OdeRhs& rhs, double t0, Eigen::VectorXd y0,
                                  const IntegratorConfig& cfg) {
  cfg.validate();
  IntegratorState s;
  s.t = t0;
  s.y = std::move(y0);
  s.f.resize(s.y.size());
  rhs(s.y, s.f);
  s.dt = cfg.dt_init;
  return s;
}

void integrate_dopri5(const OdeRhs& rhs, IntegratorState& s, double t_end,
                      const IntegratorConfig& cfg, const StepObserver& observer) {
  cfg.validate();
  const Eigen::Index n = s.y.size();
  Eigen::VectorXd k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), y1(n), err(n);
  const double dt_floor = 1e-3 * std::numeric_limits<double>::epsilon() * std::abs(t_end);

  while (s.t < t_end) {
    if (s.accepted + s.rejected >= cfg.max_steps)
      throw StepLimitExceeded("integration exceeded " + std::to_string(cfg.max_steps) +
                              " steps before t = " + std::to_string(t_end));
    double dt = std::min(s.dt, cfg.dt_max);
    bool last = false;
    if (s.t + dt >= t_end || s.t + 1.01 * dt >= t_end) {
      dt = t_end - s.t;
      last = true;
    }
    if (dt < dt_floor || s.t + dt == s.t)
      throw StepUnderflow("step size underflow at t = " + std::to_string(s.t));

    const Eigen::VectorXd& y = s.y;
    const Eigen::VectorXd& k1 = s.f;
    ytmp = y + dt * a21 * k1;
    rhs(ytmp, k2);
    ytmp = y + dt * (a31 * k1 + a32 * k2);
    rhs(ytmp, k3);
    ytmp = y + dt * (a41 * k1 + a42 * k2 + a43 * k3);
    rhs(ytmp, k4);
    ytmp = y + dt * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    rhs(ytmp, k5);
    ytmp = y + dt * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    rhs(ytmp, k6);
    y1 = y + dt * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    rhs(y1, k7);
    err = dt * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double sum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double scale = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y(i)), std::abs(y1(i)));
      const double r = err(i) / scale;
      sum += r * r;
    }
    double enorm = std::sqrt(sum / static_cast<double>(n));
    if (!std::isfinite(enorm) || !y1.allFinite()) enorm = 1e10;

    // Step-size ratio: new dt = dt / fac.
    const double fac11 = std::pow(enorm, kExpo);
    double fac = fac11 / std::pow(s.err_prev, kBetaPI) / kSafety;
    fac = std::clamp(fac, 1.0 / kFacMax, 1.0 / kFacMin);

    if (enorm <= 1.0) {
      s.err_prev = std::max(enorm, 1e-4);
      const double t0 = s.t;
      const double t1 = last ? t_end : s.t + dt;
      observer(AcceptedStep{t0, t1, s.y, s.f, y1, k7});
      s.t = t1;
      s.y.swap(y1);
      s.f.swap(k7);
      ++s.accepted;
      s.dt = dt / fac;
    } else {
      ++s.rejected;
      s.dt = dt / std::min(1.0 / kFacMin, fac11 / kSafety);
    }
  }
}

Eigen::VectorXd hermite_interpolate(double t, double t0, const Eigen::VectorXd& y0,
                                    const Eigen::VectorXd& f0, double t1,
                                    const Eigen::VectorXd& y1, const Eigen::VectorXd& f1) {
  const double h = t1 - t0;
  if (h == 0.0) return y0;
  const double s = (t - t0) / h;
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1;
  const double h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2;
  const double h11 = s3 - s2;
  return h00 * y0 + (h10 * h) * f0 + h01 * y1 + (h11 * h) * f1;
}

}  // namespace polyflow
