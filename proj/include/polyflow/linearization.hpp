#pragma once

#include <optional>
#include <span>

#include <Eigen/Dense>

#include "polyflow/jacobi.hpp"
#include "polyflow/polygon.hpp"

namespace polyflow {

/// Analytic linearization of the rescaled flow at the regular N-gon P_1,
/// in the flattened layout (x_0..x_{N-1}, y_0..y_{N-1}).
struct BlockMatrices {
  int n = 0;
  double beta = 0.0;
  double theta = 0.0;     // pi / N
  double lambda_1 = 0.0;  // -4 sin^2(pi / N)
  Eigen::MatrixXd m;      // circulant second difference
  Eigen::MatrixXd a, b, c;
  Eigen::MatrixXd d;      // -lambda_1 I + diag(M, M)
  Eigen::MatrixXd e;      // [[A, C], [C, B]]

  Eigen::MatrixXd linearization() const { return d + beta * e; }
};

/// Entries: a_{k,k+-1} = sin^2((2k+-1) theta), b_{k,k+-1} = cos^2((2k+-1) theta),
/// c_{k,k+-1} = -cos((2k+-1) theta) sin((2k+-1) theta), diagonals the negated
/// neighbor sums (sign-flipped for C), theta = pi/N.
BlockMatrices build_blocks(int n, double beta);

/// Dense cycle-Laplacian with weights a_k on edges (k, k+1).
Eigen::MatrixXd cycle_matrix(std::span<const double> a);

/// x A_a y^T = -sum_k a_k (x_{k+1} - x_k)(y_{k+1} - y_k).
double quadratic_form_cycle(std::span<const double> a, std::span<const double> x,
                            std::span<const double> y);

/// X E X^T = -sum_k [sin((2k+1) theta) dx_k^r - cos((2k+1) theta) dx_k^i]^2.
double E_quadratic_form(const Eigen::VectorXd& x, const BlockMatrices& blocks);

/// Central-difference Jacobian of the rescaled velocity at P_1.
Eigen::MatrixXd fd_jacobian(int n, double beta, double h);
/// Same at an arbitrary polygon.
Eigen::MatrixXd fd_jacobian_at(const Polygon& y, double beta, double h);

/// Flattened iP_1 for every N >= 4, plus flattened conj(P_1) when N = 4, as
/// columns.
Eigen::MatrixXd center_space_vectors(int n);

/// Largest |(D + beta E) z| / (|D + beta E|_2 |z|) over the center vectors.
double center_residual(const BlockMatrices& blocks);

/// Largest residual |D v - (lambda_k - lambda_1) v| over the vectors (c_k, 0),
/// (s_k, 0), (0, c_k), (0, s_k), 0 <= k <= N/2, normalized by |v|.
double d_spectrum_defect(const BlockMatrices& blocks);

struct SpectralReport {
  int n = 0;
  double beta = 0.0;
  Eigen::VectorXd eigenvalues;  // descending
  int dim_unstable = 0;
  int dim_center = 0;
  int dim_stable = 0;
  Eigen::MatrixXd unstable_basis;
  Eigen::MatrixXd center_basis;
  double zero_threshold = 0.0;
  double operator_norm = 0.0;
  /// Largest stable eigenvalue (closest to zero); the decay rate of the
  /// slowest stable mode.
  double stable_gap = 0.0;
};

/// Eigen-decomposition of D + beta E split by sign against zero_threshold
/// (default 1e-8 |D + beta E|_2). Eigenvalues within a factor 10 of the
/// threshold count as zero only if their eigenvector lies in the span of the
/// analytic center vectors; otherwise AmbiguousSpectrum.
SpectralReport classify_spectrum(int n, double beta, std::optional<double> zero_threshold = {});

/// min over eta of |Y - e^{i eta} P_1|_2: coarse scan, then golden-section
/// refinement. Returns the distance and the minimizing eta in [0, 2pi).
struct OrbitDistance {
  double distance;
  double eta;
};
OrbitDistance distance_to_regular_orbit(const Polygon& y);

}  // namespace polyflow
