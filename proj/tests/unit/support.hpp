#pragma once

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "polyflow/polygon.hpp"
#include "polyflow/random.hpp"

namespace testing {

inline constexpr double kPi = std::numbers::pi;

/// Star-shaped random polygon: radius in [0.5, 1.5], angle jittered within
/// its sector, so the result is simple and counterclockwise.
inline polyflow::Polygon random_polygon(int n, std::uint64_t seed) {
  polyflow::SeededRng rng(seed);
  std::vector<polyflow::Point> v;
  for (int j = 0; j < n; ++j) {
    const double phi = 2.0 * kPi * (j + rng.uniform(-0.3, 0.3)) / n;
    v.push_back(std::polar(rng.uniform(0.5, 1.5), phi));
  }
  return polyflow::Polygon(v);
}

inline double max_vertex_distance(const polyflow::Polygon& a, const polyflow::Polygon& b) {
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a.vertices()[j] - b.vertices()[j]));
  return m;
}

}  // namespace testing
