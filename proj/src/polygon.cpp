#include "polyflow/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "polyflow/errors.hpp"

namespace polyflow {

Polygon::Polygon(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 3) {
    throw InvalidArgument("polygon needs at least 3 vertices, got " +
                          std::to_string(vertices_.size()));
  }
}

Polygon& Polygon::operator+=(const Polygon& other) {
  if (other.size() != size()) throw InvalidArgument("vertex count mismatch");
  for (std::size_t j = 0; j < size(); ++j) vertices_[j] += other.vertices_[j];
  return *this;
}

Polygon& Polygon::operator-=(const Polygon& other) {
  if (other.size() != size()) throw InvalidArgument("vertex count mismatch");
  for (std::size_t j = 0; j < size(); ++j) vertices_[j] -= other.vertices_[j];
  return *this;
}

Polygon& Polygon::operator*=(double c) {
  for (auto& v : vertices_) v *= c;
  return *this;
}

Polygon& Polygon::operator+=(Point t) {
  for (auto& v : vertices_) v += t;
  return *this;
}

Polygon& Polygon::operator-=(Point t) {
  for (auto& v : vertices_) v -= t;
  return *this;
}

Polygon regular_polygon(int n, int k) {
  if (n < 3) throw InvalidArgument("regular_polygon: N must be >= 3");
  if (k < 0 || k >= n) throw InvalidArgument("regular_polygon: k must lie in [0, N-1]");
  std::vector<Point> v(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    // Reduce j*k mod N first so the angle argument stays in [0, 2pi).
    const double phase = 2.0 * std::numbers::pi * static_cast<double>((j * k) % n) / n;
    v[static_cast<std::size_t>(j)] = {std::cos(phase), std::sin(phase)};
  }
  return Polygon(std::move(v));
}

Polygon point_polygon(std::size_t n, Point q) { return Polygon(std::vector<Point>(n, q)); }

std::vector<double> edge_lengths(const Polygon& p) {
  const auto n = static_cast<std::ptrdiff_t>(p.size());
  std::vector<double> l(p.size());
  for (std::ptrdiff_t j = 0; j < n; ++j) l[static_cast<std::size_t>(j)] = std::abs(p[j + 1] - p[j]);
  return l;
}

double diameter(const Polygon& p) {
  double d = 0.0;
  const auto v = p.vertices();
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) d = std::max(d, std::abs(v[i] - v[j]));
  return d;
}

std::vector<double> interior_angles(const Polygon& p) {
  const auto n = static_cast<std::ptrdiff_t>(p.size());
  const double tol = kCoincidenceTolerance * diameter(p);
  std::vector<double> theta(p.size());
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    const Point fwd = p[j + 1] - p[j];
    const Point back = p[j - 1] - p[j];
    if (std::abs(fwd) <= tol || std::abs(back) <= tol) {
      throw DegenerateVertex("consecutive vertices coincide at vertex " + std::to_string(j));
    }
    // arg(back / fwd) is the counterclockwise rotation from fwd to back.
    double a = std::arg(back * std::conj(fwd));
    if (a < 0.0) a += 2.0 * std::numbers::pi;
    theta[static_cast<std::size_t>(j)] = a;
  }
  return theta;
}

std::vector<double> sin_squared_angles(const Polygon& p) {
  const auto n = static_cast<std::ptrdiff_t>(p.size());
  std::vector<double> s(p.size(), 0.0);
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    const Point fwd = p[j + 1] - p[j];
    const Point back = p[j - 1] - p[j];
    const double denom = std::norm(fwd) * std::norm(back);
    if (denom == 0.0) continue;
    const double cross = fwd.real() * back.imag() - fwd.imag() * back.real();
    s[static_cast<std::size_t>(j)] = cross * cross / denom;
  }
  return s;
}

double energy(const Polygon& p, double alpha) {
  if (!(alpha > 0.0)) throw InvalidArgument("energy: alpha must be positive");
  double sum = 0.0;
  for (double l : edge_lengths(p)) sum += std::pow(l, alpha);
  return sum / alpha;
}

double p_norm(std::span<const Point> x, double p) {
  if (!(p >= 1.0)) throw InvalidArgument("p_norm: p must be >= 1");
  double sum = 0.0;
  for (const auto& z : x) sum += std::pow(std::abs(z), p);
  return std::pow(sum, 1.0 / p);
}

Point center_of_mass(const Polygon& p) {
  Point s{0.0, 0.0};
  for (const auto& z : p.vertices()) s += z;
  return s / static_cast<double>(p.size());
}

LaplacianMatrix laplacian(const Polygon& p, double beta) {
  const auto n = static_cast<Eigen::Index>(p.size());
  const auto l = edge_lengths(p);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index next = (j + 1) % n;
    const double w = std::pow(l[static_cast<std::size_t>(j)], beta);
    m(j, next) += w;
    m(next, j) += w;
    m(j, j) -= w;
    m(next, next) -= w;
  }
  return {std::move(m)};
}

Polygon apply_similarity(const Polygon& p, double scale, double rotation, Point translation) {
  if (!(scale > 0.0)) throw InvalidArgument("apply_similarity: scale must be positive");
  const Point factor = std::polar(scale, rotation);
  std::vector<Point> v(p.vertices().begin(), p.vertices().end());
  for (auto& z : v) z = factor * z + translation;
  return Polygon(std::move(v));
}

Eigen::VectorXd flatten(const Polygon& p) {
  const auto n = static_cast<Eigen::Index>(p.size());
  Eigen::VectorXd v(2 * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    v(j) = p[j].real();
    v(n + j) = p[j].imag();
  }
  return v;
}

Polygon unflatten(const Eigen::VectorXd& v) {
  if (v.size() % 2 != 0) throw InvalidArgument("unflatten: odd-length vector");
  const Eigen::Index n = v.size() / 2;
  std::vector<Point> pts(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) pts[static_cast<std::size_t>(j)] = {v(j), v(n + j)};
  return Polygon(std::move(pts));
}

}  // namespace polyflow
