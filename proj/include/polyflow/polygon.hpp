#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace polyflow {

/// Planar point in complex-number form, x + iy.
using Point = std::complex<double>;

/// Ordered N-tuple of planar points, N >= 3. Vertex indices are taken
/// modulo N, so `P[-1]` is the last vertex and `P[N]` the first.
class Polygon {
 public:
  explicit Polygon(std::vector<Point> vertices);

  std::size_t size() const { return vertices_.size(); }
  const Point& operator[](std::ptrdiff_t j) const { return vertices_[wrap(j)]; }
  Point& operator[](std::ptrdiff_t j) { return vertices_[wrap(j)]; }

  std::span<const Point> vertices() const { return vertices_; }

  Polygon& operator+=(const Polygon& other);
  Polygon& operator-=(const Polygon& other);
  Polygon& operator*=(double c);
  Polygon& operator+=(Point t);
  Polygon& operator-=(Point t);

  friend Polygon operator+(Polygon a, const Polygon& b) { return a += b; }
  friend Polygon operator-(Polygon a, const Polygon& b) { return a -= b; }
  friend Polygon operator*(double c, Polygon a) { return a *= c; }
  friend Polygon operator+(Polygon a, Point t) { return a += t; }
  friend Polygon operator-(Polygon a, Point t) { return a -= t; }

  bool operator==(const Polygon&) const = default;

 private:
  std::size_t wrap(std::ptrdiff_t j) const {
    const auto n = static_cast<std::ptrdiff_t>(vertices_.size());
    return static_cast<std::size_t>(((j % n) + n) % n);
  }

  std::vector<Point> vertices_;
};

/// Weighted graph Laplacian on the N-cycle: symmetric, zero row sums,
/// entry (j, j+1) = l_j^beta.
struct LaplacianMatrix {
  Eigen::MatrixXd entries;

  Eigen::Index size() const { return entries.rows(); }
};

/// Angle sums and degeneracy use this fraction of the polygon diameter as
/// the coincidence threshold for consecutive vertices.
inline constexpr double kCoincidenceTolerance = 1e-12;

/// Vertex j at exp(2*pi*i*j*k/N). k = 1 is the counterclockwise convex
/// regular N-gon; other k coprime to N give star polygons.
Polygon regular_polygon(int n, int k = 1);

/// Polygon with all N vertices at q: a fixed point of the flow.
Polygon point_polygon(std::size_t n, Point q);

/// l_j = |X_{j+1} - X_j|.
std::vector<double> edge_lengths(const Polygon& p);

/// Largest distance between any two vertices.
double diameter(const Polygon& p);

/// Counterclockwise rotation carrying the forward edge direction at X_j onto
/// the backward edge direction, normalized to (0, 2pi).
/// Throws DegenerateVertex when consecutive vertices coincide.
std::vector<double> interior_angles(const Polygon& p);

/// sin^2 of the angle at every vertex; 0 where an adjacent edge vanishes.
/// Never throws, so it can be used as a diagnostic on any state.
std::vector<double> sin_squared_angles(const Polygon& p);

/// F_alpha(P) = (1/alpha) * sum_j l_j^alpha.
double energy(const Polygon& p, double alpha);

/// (sum_k |X_k|^p)^(1/p).
double p_norm(std::span<const Point> x, double p);
inline double p_norm(const Polygon& x, double p) { return p_norm(x.vertices(), p); }

Point center_of_mass(const Polygon& p);

/// M_X with weights l_j^beta. With beta = 0 a zero-length edge has weight 1
/// (std::pow(0, 0) == 1), matching the constant weights of the linear flow.
LaplacianMatrix laplacian(const Polygon& p, double beta);

/// z -> scale * exp(i * rotation) * z + translation on every vertex.
Polygon apply_similarity(const Polygon& p, double scale, double rotation,
                         Point translation);

/// Real coordinates (x_0..x_{N-1}, y_0..y_{N-1}).
Eigen::VectorXd flatten(const Polygon& p);
Polygon unflatten(const Eigen::VectorXd& v);

}  // namespace polyflow
