#include "support.hpp"

#include "polyflow/errors.hpp"
#include "polyflow/integrator.hpp"

using namespace polyflow;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

}  // namespace

TEST_CASE("config validation") {
  IntegratorConfig c;
  CHECK_NOTHROW(c.validate());
  c.rel_tol = 0.0;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = {};
  c.dt_init = 1.0;
  c.dt_max = 0.5;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
}

TEST_CASE("harmonic oscillator stays on the exact solution") {
  const OdeRhs rhs = [](const Eigen::VectorXd& y, Eigen::VectorXd& f) {
    f.resize(2);
    f(0) = y(1);
    f(1) = -y(0);
  };
  IntegratorConfig cfg;
  IntegratorState s = start_integration(rhs, 0.0, vec({1.0, 0.0}), cfg);
  double t_last = 0.0;
  bool increasing = true;
  integrate_dopri5(rhs, s, 10.0, cfg, [&](const AcceptedStep& st) {
    increasing = increasing && st.t1 > st.t0 && st.t0 == t_last;
    t_last = st.t1;
  });
  CHECK(increasing);
  CHECK(s.t == 10.0);
  CHECK(t_last == 10.0);
  CHECK(std::abs(s.y(0) - std::cos(10.0)) < 1e-7);
  CHECK(std::abs(s.y(1) + std::sin(10.0)) < 1e-7);
}

TEST_CASE("tighter tolerance gives smaller error") {
  const OdeRhs rhs = [](const Eigen::VectorXd& y, Eigen::VectorXd& f) { f = -y; };
  auto error_at = [&](double tol) {
    IntegratorConfig cfg;
    cfg.rel_tol = tol;
    cfg.abs_tol = tol * 1e-3;
    IntegratorState s = start_integration(rhs, 0.0, vec({1.0}), cfg);
    integrate_dopri5(rhs, s, 5.0, cfg, [](const AcceptedStep&) {});
    return std::abs(s.y(0) - std::exp(-5.0));
  };
  CHECK(error_at(1e-10) < error_at(1e-6));
  CHECK(error_at(1e-10) < 1e-11);
}

TEST_CASE("step limit and underflow") {
  const OdeRhs decay = [](const Eigen::VectorXd& y, Eigen::VectorXd& f) { f = -y; };
  IntegratorConfig cfg;
  cfg.max_steps = 3;
  cfg.dt_max = 1e-3;
  IntegratorState s = start_integration(decay, 0.0, vec({1.0}), cfg);
  CHECK_THROWS_AS(integrate_dopri5(decay, s, 1.0, cfg, [](const AcceptedStep&) {}), StepLimitExceeded);

  // y' = y^2 from y(0) = 1 blows up at t = 1.
  const OdeRhs blowup = [](const Eigen::VectorXd& y, Eigen::VectorXd& f) { f = y.array().square(); };
  IntegratorConfig cfg2;
  IntegratorState s2 = start_integration(blowup, 0.0, vec({1.0}), cfg2);
  CHECK_THROWS_AS(integrate_dopri5(blowup, s2, 2.0, cfg2, [](const AcceptedStep&) {}), Error);
}

TEST_CASE("integration can be resumed") {
  const OdeRhs rhs = [](const Eigen::VectorXd& y, Eigen::VectorXd& f) { f = -y; };
  IntegratorConfig cfg;
  IntegratorState s = start_integration(rhs, 0.0, vec({1.0}), cfg);
  integrate_dopri5(rhs, s, 1.0, cfg, [](const AcceptedStep&) {});
  integrate_dopri5(rhs, s, 3.0, cfg, [](const AcceptedStep&) {});
  CHECK(s.t == 3.0);
  CHECK(std::abs(s.y(0) - std::exp(-3.0)) < 1e-9);
}

TEST_CASE("hermite interpolation reproduces cubics") {
  auto p = [](double t) { return 2 * t * t * t - t * t + 3 * t - 1; };
  auto dp = [](double t) { return 6 * t * t - 2 * t + 3; };
  const double t0 = 0.5, t1 = 1.75;
  for (double t : {0.5, 0.8, 1.3, 1.75}) {
    const Eigen::VectorXd v =
        hermite_interpolate(t, t0, vec({p(t0)}), vec({dp(t0)}), t1, vec({p(t1)}), vec({dp(t1)}));
    CHECK(v(0) == doctest::Approx(p(t)).epsilon(1e-14));
  }
}
