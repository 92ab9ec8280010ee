#include "support.hpp"

#include "polyflow/errors.hpp"
#include "polyflow/flow.hpp"
#include "polyflow/linearization.hpp"

using namespace polyflow;
using testing::kPi;

namespace {

bool symmetric(const Eigen::MatrixXd& m) { return (m - m.transpose()).cwiseAbs().maxCoeff() < 1e-15; }

}  // namespace

TEST_CASE("block matrices") {
  for (int n : {3, 4, 5, 8, 13}) {
    const BlockMatrices b = build_blocks(n, 1.0);
    CHECK(b.theta == doctest::Approx(kPi / n));
    CHECK(b.lambda_1 == doctest::Approx(-4 * std::pow(std::sin(kPi / n), 2)));
    CHECK((b.a + b.b - b.m).cwiseAbs().maxCoeff() < 1e-15);
    for (const Eigen::MatrixXd* m : {&b.a, &b.b, &b.c}) {
      CHECK(symmetric(*m));
      CHECK(m->rowwise().sum().cwiseAbs().maxCoeff() < 1e-14);
      if (n >= 4) {
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            const int d = std::abs(i - j);
            if (d > 1 && d < n - 1) CHECK((*m)(i, j) == 0.0);
          }
      }
    }
    CHECK(symmetric(b.d));
    CHECK(symmetric(b.e));
    // E is negative semidefinite.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b.e);
    CHECK(es.eigenvalues().maxCoeff() < 1e-13);
  }
  CHECK(build_blocks(4, 1.0).lambda_1 == doctest::Approx(-2.0));
}

TEST_CASE("quadratic forms match dense products") {
  SeededRng rng(5);
  for (int n : {3, 6, 11}) {
    std::vector<double> a(n), x(n), y(n);
    for (int k = 0; k < n; ++k) {
      a[k] = rng.uniform();
      x[k] = rng.uniform(-1, 1);
      y[k] = rng.uniform(-1, 1);
    }
    const Eigen::MatrixXd c = cycle_matrix(a);
    const Eigen::Map<const Eigen::VectorXd> xv(x.data(), n), yv(y.data(), n);
    CHECK(quadratic_form_cycle(a, x, y) == doctest::Approx(xv.dot(c * yv)).epsilon(1e-13));
    CHECK(quadratic_form_cycle(a, x, x) <= 0.0);

    const BlockMatrices b = build_blocks(n, 2.0);
    Eigen::VectorXd z(2 * n);
    for (int k = 0; k < 2 * n; ++k) z(k) = rng.uniform(-1, 1);
    CHECK(E_quadratic_form(z, b) == doctest::Approx(z.dot(b.e * z)).epsilon(1e-12));
  }
}

TEST_CASE("center space") {
  for (int n : {4, 5, 6, 9}) {
    const BlockMatrices b = build_blocks(n, 1.0);
    const Polygon p1 = regular_polygon(n);
    std::vector<Point> rot, conj;
    for (Point q : p1.vertices()) {
      rot.push_back(Point(0, 1) * q);
      conj.push_back(std::conj(q));
    }
    const Eigen::VectorXd ip1 = flatten(Polygon(rot));
    CHECK((b.linearization() * ip1).norm() < 1e-13 * ip1.norm());
    const Eigen::VectorXd cp = flatten(Polygon(conj));
    const double r = (b.linearization() * cp).norm() / cp.norm();
    if (n == 4) CHECK(r < 1e-13);
    else CHECK(r > 1e-3);
    CHECK(center_residual(b) < 1e-13);
    CHECK(center_space_vectors(n).cols() == (n == 4 ? 2 : 1));
  }
  CHECK(d_spectrum_defect(build_blocks(7, 1.0)) < 1e-13);
}

TEST_CASE("finite-difference Jacobian") {
  for (int n : {3, 5, 8})
    for (double beta : {0.5, 1.0, 3.0}) {
      const BlockMatrices b = build_blocks(n, beta);
      CHECK((fd_jacobian(n, beta, 1e-6) - b.linearization()).cwiseAbs().maxCoeff() < 1e-6);
    }

  SUBCASE("the formula does not hold away from P_1") {
    const int n = 5;
    const Polygon cp = apply_similarity(regular_polygon(n), 1.3, 0.0, {0, 0});
    CHECK((fd_jacobian_at(cp, 1.0, 1e-6) - build_blocks(n, 1.0).linearization()).cwiseAbs().maxCoeff() > 1e-3);
  }
}

TEST_CASE("spectrum classification") {
  SUBCASE("general N") {
    for (int n : {5, 6, 10}) {
      const SpectralReport r = classify_spectrum(n, 1.0);
      CHECK(r.dim_unstable == 2);
      CHECK(r.dim_center == 1);
      CHECK(r.dim_stable == 2 * n - 3);
      CHECK(r.unstable_basis.cols() == 2);
      CHECK(r.center_basis.cols() == 1);
      CHECK(r.stable_gap < 0.0);
    }
  }
  SUBCASE("N = 4 has a two-dimensional center space") {
    const SpectralReport r = classify_spectrum(4, 2.0);
    CHECK(r.dim_unstable == 2);
    CHECK(r.dim_center == 2);
    CHECK(r.dim_stable == 4);
  }
  SUBCASE("N = 3") {
    const SpectralReport r = classify_spectrum(3, 1.0);
    CHECK(r.dim_unstable + r.dim_center + r.dim_stable == 6);
    CHECK(r.dim_unstable == 2);
  }
  SUBCASE("unstable eigenvalues equal -lambda_1") {
    const SpectralReport r = classify_spectrum(7, 0.7);
    const double lam = build_blocks(7, 0.7).lambda_1;
    CHECK(r.eigenvalues(0) == doctest::Approx(-lam).epsilon(1e-12));
    CHECK(r.eigenvalues(1) == doctest::Approx(-lam).epsilon(1e-12));
  }
}

TEST_CASE("distance to the regular orbit") {
  const int n = 6;
  for (double eta : {0.0, 0.4, 2.0, 5.5}) {
    const Polygon y = apply_similarity(regular_polygon(n), 1.0, eta, {0, 0});
    const OrbitDistance d = distance_to_regular_orbit(y);
    CHECK(d.distance < 1e-9);
    // The orbit is invariant under rotation by 2pi/N, so eta is determined mod 2pi/N.
    const double diff = std::remainder(d.eta - eta, 2 * kPi / n);
    CHECK(std::abs(diff) < 1e-7);
  }
  const OrbitDistance far = distance_to_regular_orbit(apply_similarity(regular_polygon(n), 2.0, 0.0, {0, 0}));
  CHECK(far.distance == doctest::Approx(std::sqrt(double(n))).epsilon(1e-9));
}

TEST_CASE("linear dynamics predict nearby rescaled motion") {
  // A small stable perturbation of P_1 evolves like exp(tau L) to second order.
  const int n = 6;
  const double beta = 1.0, eps = 1e-5, tau = 0.5;
  const BlockMatrices b = build_blocks(n, beta);
  const SpectralReport rep = classify_spectrum(n, beta);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b.linearization());
  // Eigenvector of the most negative eigenvalue.
  const Eigen::VectorXd v = es.eigenvectors().col(0);
  const Eigen::VectorXd p1 = flatten(regular_polygon(n));
  const Trajectory tr = evolve_rescaled(unflatten(p1 + eps * v), beta, tau);
  const Eigen::VectorXd got = flatten(tr.back().polygon) - p1;
  const Eigen::VectorXd predicted = std::exp(es.eigenvalues()(0) * tau) * eps * v;
  CHECK((got - predicted).norm() < 1e-3 * eps);
  CHECK(rep.dim_stable == 2 * n - 3);
}
