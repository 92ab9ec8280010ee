#pragma once

#include <Eigen/Dense>

namespace polyflow {

struct SymmetricEigen {
  Eigen::VectorXd values;   // sorted descending
  Eigen::MatrixXd vectors;  // column i pairs with values(i); orthonormal
  int sweeps = 0;
};

/// Cyclic Jacobi rotation method for a real symmetric matrix. Sweeps until the
/// off-diagonal Frobenius norm falls below 1e-13 * |S|_F.
/// Throws NotSymmetric when |S - S^T|_max > 1e-12 * |S|_max.
SymmetricEigen symmetric_eigs(const Eigen::MatrixXd& s);

}  // namespace polyflow
