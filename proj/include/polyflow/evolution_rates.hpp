#pragma once

#include <cstddef>

#include "polyflow/polygon.hpp"

namespace polyflow {

/// dl_j/dt = -2 l_j^{b+1} - l_{j+1}^{b+1} cos(theta_{j+1}) - l_{j-1}^{b+1} cos(theta_j)
/// under the plain flow. Throws DegenerateVertex when an angle it needs is
/// undefined.
double edge_length_rhs(const Polygon& p, double beta, std::ptrdiff_t j);

/// dtheta_j/dt = [ (l_{j-1}^{b+2} + l_j^{b+2}) sin(theta_j)
///                 - l_{j+1}^{b+1} l_{j-1} sin(theta_{j+1})
///                 - l_{j-2}^{b+1} l_j sin(theta_{j-1}) ] / (l_j l_{j-1}).
/// The derivation divides by sin(theta_j), so CollinearVertex is raised when
/// |sin(theta_j)| < 1e-10.
double angle_rhs(const Polygon& p, double beta, std::ptrdiff_t j);

inline constexpr double kCollinearSinThreshold = 1e-10;

}  // namespace polyflow
