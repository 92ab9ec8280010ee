#include "support.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "polyflow/entropy.hpp"
#include "polyflow/errors.hpp"
#include "polyflow/experiments.hpp"
#include "polyflow/self_similar.hpp"

using namespace polyflow;

TEST_CASE("entropy_rho basics") {
  const Trajectory tr = evolve(testing::random_polygon(5, 1), 1.0, 1.0);
  CHECK(entropy_rho(tr, {0.3, 0.1}, 0.0) == 1.0);
  CHECK(entropy_rho(tr, {0, 0}, 0.5) < 1.0);
  CHECK(entropy_rho(tr, {0, 0}, 0.5) > 0.0);
  const Trajectory tr2 = evolve(testing::random_polygon(5, 1), 2.0, 1.0);
  CHECK(entropy_rho(tr2, {5, 5}, 0.0) == 1.0);

  CHECK_THROWS_AS(entropy_rho(evolve(regular_polygon(5), 0.0, 1.0), {0, 0}, 0.5), BetaZero);
  CHECK_THROWS_AS(entropy_rho(evolve_rescaled(regular_polygon(5), 1.0, 1.0), {0, 0}, 0.5), InvalidArgument);
}

TEST_CASE("rho on the self-similar solution matches a quadrature oracle") {
  for (double beta : {0.5, 1.0, 2.0}) {
    const int n = 6;
    const double l = regular_edge_length(n), lam = circulant_eigenvalue(n, 1);
    const Trajectory tr = evolve(regular_polygon(n), beta, 2.0);
    auto a = [&](double s) { return self_similar_scale(s, beta, l, lam); };
    // |M X|^2 = N (l^beta lambda_1)^2 a^{2 + 2 beta} on X = a P_1.
    auto integrand = [&](double s) {
      return 0.5 * beta * std::pow(s, 2 / beta + 1) * n * std::pow(std::pow(l, beta) * lam, 2) *
             std::pow(a(s), 2 + 2 * beta);
    };
    for (double t : {0.3, 1.0, 2.0}) {
      const double integral =
          boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, 0.0, t, 15, 1e-14);
      const double oracle = std::exp(-std::pow(t, 2 / beta) * n * a(t) * a(t) - integral);
      CHECK(entropy_rho(tr, {0, 0}, t) == doctest::Approx(oracle).epsilon(1e-6));
    }
  }
}

TEST_CASE("monotonicity formula") {
  SUBCASE("random pentagons, several times") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Polygon p = testing::random_polygon(5, 60 + seed);
      const Trajectory tr = evolve(p, 1.0, 1.1);
      for (double t : {0.1, 0.5, 1.0}) {
        const MonotonicityCheck m = monotonicity_residual(tr, center_of_mass(p), t);
        CHECK(m.formula <= 0.0);
        CHECK(m.residual <= 1e-5 * std::abs(m.numeric_derivative));
      }
    }
  }

  SUBCASE("self-similar solution, x0 at the limit point") {
    // X = a(t) P_1 gives X - x0 + (beta/2) t M X = a P_1 (1 + (beta/2) l^beta lambda_1 a^beta t),
    // which is a P_1 (1 - (beta/2) l^beta lambda_1 t) / (1 - beta l^beta lambda_1 t) and does
    // not vanish. The formula and the numeric derivative must still agree.
    const int n = 5;
    const double beta = 1.0, l = regular_edge_length(n), lam = circulant_eigenvalue(n, 1);
    const Trajectory tr = evolve(regular_polygon(n), beta, 1.0);
    for (double t : {0.2, 0.7}) {
      const MonotonicityCheck m = monotonicity_residual(tr, {0, 0}, t);
      const double a = self_similar_scale(t, beta, l, lam);
      const double k = std::pow(l, beta) * lam;
      const double bracket = n * std::pow(a * (1 - 0.5 * beta * k * t) / (1 - beta * k * t), 2);
      const double expected = -(2 / beta) * entropy_rho(tr, {0, 0}, t) * std::pow(t, 2 / beta - 1) * bracket;
      CHECK(m.formula == doctest::Approx(expected).epsilon(1e-7));
      CHECK(m.residual <= 1e-5 * std::abs(m.numeric_derivative));
    }
  }

  SUBCASE("errors") {
    const Trajectory tr = evolve(regular_polygon(5), 3.0, 1.0);
    CHECK_THROWS_AS(monotonicity_residual(tr, {0, 0}, 1e-5), InvalidArgument);
    CHECK_THROWS_AS(monotonicity_residual(tr, {0, 0}, 1.0), RangeExceeded);
    CHECK_NOTHROW(monotonicity_residual(tr, {0, 0}, 0.5));
  }
}

TEST_CASE("run_entropy tabulates rho and residuals") {
  const EntropyRun run = run_entropy(regular_polygon(5), 1.0, 1.0, std::nullopt, 10);
  CHECK(run.rows.size() == 10);
  CHECK(run.rho_nonincreasing);
  CHECK(run.max_relative_residual <= 1e-5);
  for (std::size_t i = 1; i < run.rows.size(); ++i) CHECK(run.rows[i].rho <= run.rows[i - 1].rho);
}
