#include "polyflow/triangle.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "polyflow/errors.hpp"

namespace polyflow {

namespace {

constexpr double kPi = std::numbers::pi;

void require_triangle(const Polygon& p) {
  if (p.size() != 3) throw InvalidArgument("expected a triangle, got " + std::to_string(p.size()) + " vertices");
}

struct TriangleData {
  std::array<double, 3> l;
  std::array<double, 3> theta;
  std::array<double, 3> sin_theta;
  double area;
};

TriangleData triangle_data(const Polygon& p) {
  require_triangle(p);
  const auto l = edge_lengths(p);
  std::vector<double> theta;
  try {
    theta = interior_angles(p);
  } catch (const DegenerateVertex& e) {
    throw DegenerateTriangle(e.what());
  }
  TriangleData d{};
  for (std::size_t i = 0; i < 3; ++i) {
    d.l[i] = l[i];
    d.theta[i] = theta[i];
    d.sin_theta[i] = std::sin(theta[i]);
    if (std::abs(d.sin_theta[i]) < kTriangleDegeneracySin)
      throw DegenerateTriangle("triangle is degenerate at vertex " + std::to_string(i));
    if (theta[i] >= kPi) throw DegenerateTriangle("triangle is clockwise; relabel it first");
  }
  d.area = (0.5 * d.l[0] * d.l[2] * d.sin_theta[0] + 0.5 * d.l[0] * d.l[1] * d.sin_theta[1] +
            0.5 * d.l[1] * d.l[2] * d.sin_theta[2]) /
           3.0;
  return d;
}

}  // namespace

TriangleAngles::TriangleAngles(std::array<double, 3> theta) : theta_(theta) {
  double sum = 0.0;
  for (double t : theta_) {
    if (!(t >= 0.0 && t <= kPi)) throw InvalidArgument("triangle angle outside [0, pi]");
    sum += t;
  }
  if (std::abs(sum - kPi) > 1e-10) throw InvalidArgument("triangle angles must sum to pi");
}

TriangleAngles triangle_angles(const Polygon& p) {
  const auto d = triangle_data(p);
  return TriangleAngles(d.theta);
}

std::array<double, 3> triangle_area_forms(const Polygon& p) {
  const auto d = triangle_data(p);
  return {0.5 * d.l[0] * d.l[2] * d.sin_theta[0], 0.5 * d.l[0] * d.l[1] * d.sin_theta[1],
          0.5 * d.l[1] * d.l[2] * d.sin_theta[2]};
}

double triangle_area(const Polygon& p) { return triangle_data(p).area; }

std::array<double, 3> triangle_angle_rhs(const Polygon& p, double beta) {
  const auto d = triangle_data(p);
  const auto& l = d.l;
  const auto& s = d.sin_theta;
  const std::array<double, 3> lb{std::pow(l[0], beta), std::pow(l[1], beta), std::pow(l[2], beta)};
  // w_i = l_i^2 sin^2(theta_i)
  const std::array<double, 3> w{l[0] * l[0] * s[0] * s[0], l[1] * l[1] * s[1] * s[1],
                                l[2] * l[2] * s[2] * s[2]};
  const double inv = 1.0 / (2.0 * d.area);
  return {inv * (w[1] * (lb[2] - lb[1]) + w[0] * (lb[0] - lb[1])),
          inv * (w[2] * (lb[0] - lb[2]) + w[1] * (lb[1] - lb[2])),
          inv * (w[0] * (lb[1] - lb[0]) + w[2] * (lb[2] - lb[0]))};
}

double lyapunov_V(const TriangleAngles& a) { return -(kPi - a[0]) * (kPi - a[1]) * (kPi - a[2]); }

double lyapunov_V_dot(const Polygon& p, double beta) {
  const auto d = triangle_data(p);
  const auto& l = d.l;
  const auto& s = d.sin_theta;
  const auto& th = d.theta;
  const std::array<double, 3> lb{std::pow(l[0], beta), std::pow(l[1], beta), std::pow(l[2], beta)};
  const std::array<double, 3> w{l[0] * l[0] * s[0] * s[0], l[1] * l[1] * s[1] * s[1],
                                l[2] * l[2] * s[2] * s[2]};
  const double sum = w[1] * (lb[2] - lb[1]) * (th[0] - th[1]) * (kPi - th[2]) +
                     w[0] * (lb[0] - lb[1]) * (th[0] - th[2]) * (kPi - th[1]) +
                     w[2] * (lb[0] - lb[2]) * (th[1] - th[2]) * (kPi - th[0]);
  return sum / (2.0 * d.area);
}

double lyapunov_V_dot_chain(const TriangleAngles& a, const std::array<double, 3>& rates) {
  return rates[0] * (kPi - a[1]) * (kPi - a[2]) + rates[1] * (kPi - a[0]) * (kPi - a[2]) +
         rates[2] * (kPi - a[0]) * (kPi - a[1]);
}

Polygon counterclockwise(const Polygon& t) {
  require_triangle(t);
  const Point a = t[1] - t[0];
  const Point b = t[2] - t[0];
  const double cross = a.real() * b.imag() - a.imag() * b.real();
  if (cross >= 0.0) return t;
  return Polygon({t[0], t[2], t[1]});
}

}  // namespace polyflow
