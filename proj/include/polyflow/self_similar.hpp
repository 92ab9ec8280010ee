#pragma once

#include "polyflow/polygon.hpp"

namespace polyflow {

/// Edge length of regular_polygon(N, k): |2 sin(pi k / N)|.
double regular_edge_length(int n, int k = 1);

/// Eigenvalue of the circulant second-difference matrix M on P_k:
/// lambda_k = -4 sin^2(pi k / N).
double circulant_eigenvalue(int n, int k);

/// a(t) = (1 - beta l^beta lambda_k t)^(-1/beta): a(t) P_k solves the flow
/// when l and lambda_k belong to P_k. Requires beta > 0, l > 0, lambda_k < 0.
double self_similar_scale(double t, double beta, double l, double lambda_k);

/// Time change of the rescaled flow,
/// tau = ln(1 - beta l^beta lambda_1 t) / (-beta lambda_1).
double tau_of_t(double t, double beta, double l, double lambda_1);
/// Inverse of tau_of_t.
double t_of_tau(double tau, double beta, double l, double lambda_1);

struct SelfSimilarFit {
  /// min_sigma |M_P P - sigma (P - Pbar)| / |M_P P|
  double residual;
  /// Minimizing sigma; for a self-similar solution this is d(lambda)/dt at 0.
  double sigma;
};

/// Distance of P from the self-similar characterization M_P P = sigma (P - Q),
/// Q the center of mass, as a least-squares projection.
/// Throws ZeroVelocity when M_P P = 0 (P is a point).
SelfSimilarFit self_similar_residual(const Polygon& p, double beta);

}  // namespace polyflow
