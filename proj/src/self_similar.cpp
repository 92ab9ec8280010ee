#include "polyflow/self_similar.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "polyflow/errors.hpp"
#include "polyflow/flow.hpp"

namespace polyflow {

namespace {

void require_scaling_args(double beta, double l, double lambda) {
  if (!(beta > 0.0)) throw BetaZero("self-similar scaling requires beta > 0");
  if (!(l > 0.0)) throw InvalidArgument("edge length must be positive");
  if (!(lambda < 0.0)) throw InvalidArgument("eigenvalue must be negative");
}

}  // namespace

double regular_edge_length(int n, int k) {
  return std::abs(2.0 * std::sin(std::numbers::pi * k / n));
}

double circulant_eigenvalue(int n, int k) {
  const double s = std::sin(std::numbers::pi * k / n);
  return -4.0 * s * s;
}

double self_similar_scale(double t, double beta, double l, double lambda_k) {
  require_scaling_args(beta, l, lambda_k);
  if (!(t >= 0.0)) throw InvalidArgument("t must be >= 0");
  return std::pow(1.0 - beta * std::pow(l, beta) * lambda_k * t, -1.0 / beta);
}

double tau_of_t(double t, double beta, double l, double lambda_1) {
  require_scaling_args(beta, l, lambda_1);
  if (!(t >= 0.0)) throw InvalidArgument("t must be >= 0");
  return std::log1p(-beta * std::pow(l, beta) * lambda_1 * t) / (-beta * lambda_1);
}

double t_of_tau(double tau, double beta, double l, double lambda_1) {
  require_scaling_args(beta, l, lambda_1);
  if (!(tau >= 0.0)) throw InvalidArgument("tau must be >= 0");
  return std::expm1(-beta * lambda_1 * tau) / (-beta * std::pow(l, beta) * lambda_1);
}

SelfSimilarFit self_similar_residual(const Polygon& p, double beta) {
  const auto v = velocity(p, beta);
  const Point q = center_of_mass(p);
  double vv = 0.0, dd = 0.0, dv = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    const Point d = p.vertices()[j] - q;
    vv += std::norm(v[j]);
    dd += std::norm(d);
    dv += d.real() * v[j].real() + d.imag() * v[j].imag();
  }
  if (!(vv > 0.0)) throw ZeroVelocity("self_similar_residual: polygon is a fixed point");
  const double sigma = dv / dd;
  double r2 = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) r2 += std::norm(v[j] - sigma * (p.vertices()[j] - q));
  return {std::sqrt(r2 / vv), sigma};
}

}  // namespace polyflow
