#pragma once

#include <array>

#include "polyflow/polygon.hpp"

namespace polyflow {

/// Angle triple of a counterclockwise triangle, each in [0, pi] with sum pi
/// (the closure of the angle simplex).
class TriangleAngles {
 public:
  /// Throws InvalidArgument when an angle leaves [0, pi] or the sum misses
  /// pi by more than 1e-10.
  explicit TriangleAngles(std::array<double, 3> theta);

  double operator[](std::size_t i) const { return theta_[i]; }
  const std::array<double, 3>& values() const { return theta_; }

 private:
  std::array<double, 3> theta_;
};

inline constexpr double kTriangleDegeneracySin = 1e-12;

/// Interior angles of a 3-gon. DegenerateTriangle if any |sin theta| < 1e-12
/// or the triangle is clockwise (angles outside (0, pi)).
TriangleAngles triangle_angles(const Polygon& p);

/// Mean of 1/2 l0 l2 sin(theta0), 1/2 l0 l1 sin(theta1), 1/2 l1 l2 sin(theta2).
double triangle_area(const Polygon& p);

/// The three area expressions individually, for cross-checking.
std::array<double, 3> triangle_area_forms(const Polygon& p);

/// dtheta_i/dt in the 1/(2S) form; e.g.
/// dtheta_0/dt = [l1^2 sin^2(theta1)(l2^b - l1^b) + l0^2 sin^2(theta0)(l0^b - l1^b)] / (2S).
std::array<double, 3> triangle_angle_rhs(const Polygon& p, double beta);

/// V = -(pi - theta0)(pi - theta1)(pi - theta2).
double lyapunov_V(const TriangleAngles& angles);

/// Closed-form dV/dt along the flow; <= 0, zero only at the equilateral point.
double lyapunov_V_dot(const Polygon& p, double beta);

/// Chain rule sum_i dV/dtheta_i * dtheta_i/dt, with rates supplied by the caller.
double lyapunov_V_dot_chain(const TriangleAngles& angles, const std::array<double, 3>& rates);

/// Relabels a clockwise triangle counterclockwise (reverses vertex order
/// after vertex 0); counterclockwise input is returned unchanged.
Polygon counterclockwise(const Polygon& triangle);

}  // namespace polyflow
