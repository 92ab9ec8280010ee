#include "polyflow/evolution_rates.hpp"

#include <cmath>
#include <string>

#include "polyflow/errors.hpp"

namespace polyflow {

namespace {

std::size_t idx(std::ptrdiff_t j, std::size_t n) {
  const auto m = static_cast<std::ptrdiff_t>(n);
  return static_cast<std::size_t>(((j % m) + m) % m);
}

}  // namespace

double edge_length_rhs(const Polygon& p, double beta, std::ptrdiff_t j) {
  const std::size_t n = p.size();
  const auto l = edge_lengths(p);
  const auto theta = interior_angles(p);
  const double b1 = beta + 1.0;
  return -2.0 * std::pow(l[idx(j, n)], b1) -
         std::pow(l[idx(j + 1, n)], b1) * std::cos(theta[idx(j + 1, n)]) -
         std::pow(l[idx(j - 1, n)], b1) * std::cos(theta[idx(j, n)]);
}

double angle_rhs(const Polygon& p, double beta, std::ptrdiff_t j) {
  const std::size_t n = p.size();
  const auto l = edge_lengths(p);
  const auto theta = interior_angles(p);
  const double sin_j = std::sin(theta[idx(j, n)]);
  if (std::abs(sin_j) < kCollinearSinThreshold)
    throw CollinearVertex("angle_rhs: vertex " + std::to_string(j) + " is collinear with its neighbors");
  const double lj = l[idx(j, n)];
  const double ljm1 = l[idx(j - 1, n)];
  const double ljp1 = l[idx(j + 1, n)];
  const double ljm2 = l[idx(j - 2, n)];
  const double bracket = (std::pow(ljm1, beta + 2.0) + std::pow(lj, beta + 2.0)) * sin_j -
                         std::pow(ljp1, beta + 1.0) * ljm1 * std::sin(theta[idx(j + 1, n)]) -
                         std::pow(ljm2, beta + 1.0) * lj * std::sin(theta[idx(j - 1, n)]);
  return bracket / (lj * ljm1);
}

}  // namespace polyflow
