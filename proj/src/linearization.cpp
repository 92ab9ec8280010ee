#include "polyflow/linearization.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "polyflow/errors.hpp"
#include "polyflow/flow.hpp"
#include "polyflow/self_similar.hpp"

namespace polyflow {

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::Index wrap(Eigen::Index k, Eigen::Index n) { return ((k % n) + n) % n; }

}  // namespace

BlockMatrices build_blocks(int n, double beta) {
  if (n < 3) throw InvalidArgument("build_blocks: N must be >= 3");
  if (!(beta > 0.0)) throw BetaZero("build_blocks: beta must be positive");
  BlockMatrices bl;
  bl.n = n;
  bl.beta = beta;
  bl.theta = kPi / n;
  bl.lambda_1 = circulant_eigenvalue(n, 1);

  const Eigen::Index N = n;
  bl.m = Eigen::MatrixXd::Zero(N, N);
  bl.a = Eigen::MatrixXd::Zero(N, N);
  bl.b = Eigen::MatrixXd::Zero(N, N);
  bl.c = Eigen::MatrixXd::Zero(N, N);
  for (Eigen::Index k = 0; k < N; ++k) {
    bl.m(k, k) = -2.0;
    bl.m(k, wrap(k + 1, N)) += 1.0;
    bl.m(k, wrap(k - 1, N)) += 1.0;
    for (int sign : {+1, -1}) {
      const Eigen::Index nb = wrap(k + sign, N);
      const double phase = static_cast<double>(2 * k + sign) * bl.theta;
      const double s = std::sin(phase), c = std::cos(phase);
      bl.a(k, nb) += s * s;
      bl.b(k, nb) += c * c;
      bl.c(k, nb) += -c * s;
      bl.a(k, k) -= s * s;
      bl.b(k, k) -= c * c;
      bl.c(k, k) += c * s;
    }
  }

  bl.d = -bl.lambda_1 * Eigen::MatrixXd::Identity(2 * N, 2 * N);
  bl.d.topLeftCorner(N, N) += bl.m;
  bl.d.bottomRightCorner(N, N) += bl.m;
  bl.e.resize(2 * N, 2 * N);
  bl.e << bl.a, bl.c, bl.c, bl.b;
  return bl;
}

Eigen::MatrixXd cycle_matrix(std::span<const double> a) {
  const auto n = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index next = wrap(k + 1, n);
    const double w = a[static_cast<std::size_t>(k)];
    m(k, next) += w;
    m(next, k) += w;
    m(k, k) -= w;
    m(next, next) -= w;
  }
  return m;
}

double quadratic_form_cycle(std::span<const double> a, std::span<const double> x,
                            std::span<const double> y) {
  if (x.size() != a.size() || y.size() != a.size())
    throw InvalidArgument("quadratic_form_cycle: length mismatch");
  const std::size_t n = a.size();
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t next = (k + 1) % n;
    s += a[k] * (x[next] - x[k]) * (y[next] - y[k]);
  }
  return -s;
}

double E_quadratic_form(const Eigen::VectorXd& x, const BlockMatrices& bl) {
  const Eigen::Index n = bl.n;
  if (x.size() != 2 * n) throw InvalidArgument("E_quadratic_form: expected a 2N vector");
  double s = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index next = wrap(k + 1, n);
    const double phase = static_cast<double>(2 * k + 1) * bl.theta;
    const double r = std::sin(phase) * (x(next) - x(k)) - std::cos(phase) * (x(n + next) - x(n + k));
    s += r * r;
  }
  return -s;
}

Eigen::MatrixXd fd_jacobian_at(const Polygon& y, double beta, double h) {
  if (!(h > 0.0)) throw InvalidArgument("fd_jacobian: h must be positive");
  const Eigen::VectorXd y0 = flatten(y);
  const Eigen::Index dim = y0.size();
  Eigen::MatrixXd j(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    Eigen::VectorXd yp = y0, ym = y0;
    yp(col) += h;
    ym(col) -= h;
    const Eigen::VectorXd fp = flatten(Polygon(rescaled_velocity(unflatten(yp), beta)));
    const Eigen::VectorXd fm = flatten(Polygon(rescaled_velocity(unflatten(ym), beta)));
    j.col(col) = (fp - fm) / (2.0 * h);
  }
  return j;
}

Eigen::MatrixXd fd_jacobian(int n, double beta, double h) {
  return fd_jacobian_at(regular_polygon(n, 1), beta, h);
}

Eigen::MatrixXd center_space_vectors(int n) {
  if (n < 4) throw InvalidArgument("center_space_vectors: N must be >= 4");
  const Polygon p1 = regular_polygon(n, 1);
  std::vector<Point> rot(p1.vertices().begin(), p1.vertices().end());
  for (auto& z : rot) z *= Point{0.0, 1.0};
  Eigen::MatrixXd out(2 * n, n == 4 ? 2 : 1);
  out.col(0) = flatten(Polygon(rot));
  if (n == 4) {
    std::vector<Point> reversed(p1.vertices().begin(), p1.vertices().end());
    for (auto& z : reversed) z = std::conj(z);
    out.col(1) = flatten(Polygon(reversed));
  }
  return out;
}

double center_residual(const BlockMatrices& bl) {
  const Eigen::MatrixXd s = bl.linearization();
  const double norm = symmetric_eigs(s).values.cwiseAbs().maxCoeff();
  const Eigen::MatrixXd z = center_space_vectors(bl.n);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < z.cols(); ++i)
    worst = std::max(worst, (s * z.col(i)).norm() / (norm * z.col(i).norm()));
  return worst;
}

double d_spectrum_defect(const BlockMatrices& bl) {
  const Eigen::Index n = bl.n;
  double worst = 0.0;
  for (int k = 0; k <= bl.n / 2; ++k) {
    Eigen::VectorXd ck(n), sk(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      ck(j) = std::cos(2.0 * k * j * bl.theta);
      sk(j) = std::sin(2.0 * k * j * bl.theta);
    }
    const double expected = circulant_eigenvalue(bl.n, k) - bl.lambda_1;
    for (const Eigen::VectorXd* base : {&ck, &sk}) {
      if (base->norm() < 1e-8) continue;  // s_0 and s_{N/2} vanish
      for (int block = 0; block < 2; ++block) {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(2 * n);
        v.segment(block * n, n) = *base;
        worst = std::max(worst, (bl.d * v - expected * v).norm() / v.norm());
      }
    }
  }
  return worst;
}

SpectralReport classify_spectrum(int n, double beta, std::optional<double> zero_threshold) {
  const BlockMatrices bl = build_blocks(n, beta);
  const SymmetricEigen eig = symmetric_eigs(bl.linearization());

  SpectralReport r;
  r.n = n;
  r.beta = beta;
  r.eigenvalues = eig.values;
  r.operator_norm = eig.values.cwiseAbs().maxCoeff();
  r.zero_threshold = zero_threshold.value_or(1e-8 * r.operator_norm);

  // Orthonormal basis of the analytic center space (empty for triangles).
  Eigen::MatrixXd q;
  if (n >= 4) q = center_space_vectors(n).householderQr().householderQ() *
                  Eigen::MatrixXd::Identity(2 * n, n == 4 ? 2 : 1);
  auto in_center_span = [&](const Eigen::VectorXd& v) {
    if (q.cols() == 0) return false;
    return (v - q * (q.transpose() * v)).norm() <= 1e-6 * v.norm();
  };

  std::vector<Eigen::Index> unstable, center;
  const double thr = r.zero_threshold;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    const double lam = eig.values(i);
    const double mag = std::abs(lam);
    if (mag <= thr) {
      center.push_back(i);
    } else if (mag <= 10.0 * thr) {
      if (!in_center_span(eig.vectors.col(i)))
        throw AmbiguousSpectrum("eigenvalue " + std::to_string(lam) +
                                " is within a factor 10 of the zero threshold");
      center.push_back(i);
    } else if (lam > 0.0) {
      unstable.push_back(i);
    } else {
      r.stable_gap = r.dim_stable == 0 ? lam : std::max(r.stable_gap, lam);
      ++r.dim_stable;
    }
  }
  r.dim_unstable = static_cast<int>(unstable.size());
  r.dim_center = static_cast<int>(center.size());
  r.unstable_basis.resize(2 * n, r.dim_unstable);
  r.center_basis.resize(2 * n, r.dim_center);
  for (int i = 0; i < r.dim_unstable; ++i) r.unstable_basis.col(i) = eig.vectors.col(unstable[i]);
  for (int i = 0; i < r.dim_center; ++i) r.center_basis.col(i) = eig.vectors.col(center[i]);
  return r;
}

OrbitDistance distance_to_regular_orbit(const Polygon& y) {
  const int n = static_cast<int>(y.size());
  const Polygon p1 = regular_polygon(n, 1);
  auto dist = [&](double eta) {
    const Point rot = std::polar(1.0, eta);
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += std::norm(y[j] - rot * p1[j]);
    return std::sqrt(s);
  };

  constexpr int kScan = 64;
  int best = 0;
  double best_val = dist(0.0);
  for (int i = 1; i < kScan; ++i) {
    const double v = dist(2.0 * kPi * i / kScan);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  double lo = 2.0 * kPi * (best - 1) / kScan;
  double hi = 2.0 * kPi * (best + 1) / kScan;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = dist(x1), f2 = dist(x2);
  while (hi - lo > 1e-12) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = dist(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = dist(x2);
    }
  }
  double eta = 0.5 * (lo + hi);
  const double d = dist(eta);
  eta = std::fmod(eta, 2.0 * kPi);
  if (eta < 0.0) eta += 2.0 * kPi;
  return {d, eta};
}

}  // namespace polyflow
