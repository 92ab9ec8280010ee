#include "support.hpp"

#include "polyflow/errors.hpp"
#include "polyflow/experiments.hpp"
#include "polyflow/flow.hpp"
#include "polyflow/triangle.hpp"

using namespace polyflow;
using testing::kPi;

namespace {

Polygon random_ccw_triangle(SeededRng& rng) {
  for (;;) {
    Polygon t({{rng.uniform(), rng.uniform()}, {rng.uniform(), rng.uniform()}, {rng.uniform(), rng.uniform()}});
    t = counterclockwise(t);
    const auto s2 = sin_squared_angles(t);
    if (*std::min_element(s2.begin(), s2.end()) > 1e-3) return t;
  }
}

double shoelace(const Polygon& p) {
  double s = 0.0;
  for (int j = 0; j < 3; ++j) s += p[j].real() * p[j + 1].imag() - p[j + 1].real() * p[j].imag();
  return 0.5 * s;
}

}  // namespace

TEST_CASE("TriangleAngles validates the simplex") {
  CHECK_NOTHROW(TriangleAngles({kPi / 3, kPi / 3, kPi / 3}));
  CHECK_THROWS_AS(TriangleAngles({1.0, 1.0, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(TriangleAngles({-0.1, kPi / 2, kPi / 2 + 0.1}), InvalidArgument);
}

TEST_CASE("triangle_area") {
  CHECK(triangle_area(Polygon({{0, 0}, {1, 0}, {0, 1}})) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(triangle_area(regular_polygon(3)) == doctest::Approx(3 * std::sqrt(3.0) / 4).epsilon(1e-14));
  SeededRng rng(3);
  for (int i = 0; i < 20; ++i) {
    const Polygon t = random_ccw_triangle(rng);
    const auto forms = triangle_area_forms(t);
    for (double f : forms) CHECK(f == doctest::Approx(forms[0]).epsilon(1e-10));
    CHECK(triangle_area(t) == doctest::Approx(shoelace(t)).epsilon(1e-10));
  }
  CHECK_THROWS_AS(triangle_area(Polygon({{0, 0}, {1, 0}, {2, 0}})), DegenerateTriangle);
}

TEST_CASE("triangle_angles rejects clockwise and degenerate input") {
  CHECK_THROWS_AS(triangle_angles(Polygon({{0, 0}, {0, 1}, {1, 0}})), DegenerateTriangle);
  CHECK_THROWS_AS(triangle_angles(Polygon({{0, 0}, {1, 0}, {2, 0}})), DegenerateTriangle);
  const Polygon ccw = counterclockwise(Polygon({{0, 0}, {0, 1}, {1, 0}}));
  CHECK(triangle_area(ccw) == doctest::Approx(0.5));
}

TEST_CASE("triangle_angle_rhs") {
  for (double r : triangle_angle_rhs(regular_polygon(3), 1.0)) CHECK(std::abs(r) < 1e-14);
  SeededRng rng(8);
  for (int i = 0; i < 10; ++i) {
    const Polygon t = random_ccw_triangle(rng);
    const auto r = triangle_angle_rhs(t, 1.3);
    CHECK(std::abs(r[0] + r[1] + r[2]) < 1e-12 * (std::abs(r[0]) + std::abs(r[1]) + std::abs(r[2])));
  }

  SUBCASE("directional derivatives along the velocity field") {
    const Polygon t = random_ccw_triangle(rng);
    const double beta = 1.0, h = 1e-6;
    const auto v = velocity(t, beta);
    const Polygon plus({t[0] + h * v[0], t[1] + h * v[1], t[2] + h * v[2]});
    const Polygon minus({t[0] - h * v[0], t[1] - h * v[1], t[2] - h * v[2]});
    const auto ap = triangle_angles(plus).values();
    const auto am = triangle_angles(minus).values();
    const auto r = triangle_angle_rhs(t, beta);
    for (int i = 0; i < 3; ++i) CHECK(std::abs((ap[i] - am[i]) / (2 * h) - r[i]) <= 1e-7 * std::max(1.0, std::abs(r[i])));

    // The same rates seen along the integrated flow, within dense-output accuracy.
    IntegratorConfig cfg;
    cfg.rel_tol = 1e-12;
    cfg.abs_tol = 1e-14;
    const Trajectory tr = evolve(t, beta, 0.2, cfg);
    const double s = 0.1, hs = 1e-4;
    const auto bp = triangle_angles(tr.state_at(s + hs)).values();
    const auto bm = triangle_angles(tr.state_at(s - hs)).values();
    const auto rs = triangle_angle_rhs(tr.state_at(s), beta);
    for (int i = 0; i < 3; ++i) CHECK(std::abs((bp[i] - bm[i]) / (2 * hs) - rs[i]) <= 1e-5 * std::max(1.0, std::abs(rs[i])));
  }
}

TEST_CASE("Lyapunov function") {
  const double eq = lyapunov_V(TriangleAngles({kPi / 3, kPi / 3, kPi / 3}));
  CHECK(eq == doctest::Approx(-std::pow(2 * kPi / 3, 3)).epsilon(1e-14));
  CHECK(eq == doctest::Approx(-9.18704).epsilon(1e-5));
  CHECK(lyapunov_V(TriangleAngles({kPi, 0.0, 0.0})) == 0.0);
  CHECK(lyapunov_V(TriangleAngles({0.3, 1.0, kPi - 1.3})) ==
        doctest::Approx(lyapunov_V(TriangleAngles({1.0, kPi - 1.3, 0.3}))).epsilon(1e-15));

  SeededRng rng(12);
  for (int i = 0; i < 20; ++i) {
    const TriangleAngles a = triangle_angles(random_ccw_triangle(rng));
    CHECK(lyapunov_V(a) >= eq);
    CHECK(lyapunov_V(a) <= 0.0);
  }

  CHECK(std::abs(lyapunov_V_dot(regular_polygon(3), 1.0)) < 1e-13);
  for (int i = 0; i < 20; ++i) {
    const Polygon t = random_ccw_triangle(rng);
    const double beta = 0.5 + 0.1 * i;
    const double vdot = lyapunov_V_dot(t, beta);
    CHECK(vdot < 0.0);
    const double chain = lyapunov_V_dot_chain(triangle_angles(t), triangle_angle_rhs(t, beta));
    CHECK(std::abs(vdot - chain) <= 1e-10 * std::max(1.0, std::abs(vdot)));
    // Cyclic relabeling does not change the value.
    const Polygon shifted({t[1], t[2], t[0]});
    CHECK(lyapunov_V_dot(shifted, beta) == doctest::Approx(vdot).epsilon(1e-10));
  }

  SUBCASE("closed form matches the directional derivative of V") {
    const Polygon t = random_ccw_triangle(rng);
    const double h = 1e-6;
    const auto v = velocity(t, 1.0);
    const Polygon plus({t[0] + h * v[0], t[1] + h * v[1], t[2] + h * v[2]});
    const Polygon minus({t[0] - h * v[0], t[1] - h * v[1], t[2] - h * v[2]});
    const double fd = (lyapunov_V(triangle_angles(plus)) - lyapunov_V(triangle_angles(minus))) / (2 * h);
    const double vdot = lyapunov_V_dot(t, 1.0);
    CHECK(std::abs(fd - vdot) <= 1e-7 * std::max(1.0, std::abs(vdot)));
  }
}

TEST_CASE("triangle runs converge to equilateral with V nonincreasing") {
  SeededRng rng(99);
  for (int i = 0; i < 5; ++i) {
    const TriangleRun run = run_triangle(random_triangle(rng));
    CHECK(run.converged);
    CHECK(run.V_nonincreasing);
    CHECK(run.max_angle_error < 1e-6);
    REQUIRE(!run.rows.empty());
    for (const auto& row : run.rows) CHECK(row.V_dot <= 1e-15);
  }
  CHECK_THROWS_AS(run_triangle(regular_polygon(4)), InvalidArgument);
}
