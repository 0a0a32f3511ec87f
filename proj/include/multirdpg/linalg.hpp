#ifndef MULTIRDPG_LINALG_HPP
#define MULTIRDPG_LINALG_HPP

#include <Eigen/Dense>
#include <utility>

#include "multirdpg/errors.hpp"

namespace multirdpg {

struct SymmetricEigen {
  Eigen::VectorXd values;   // non-increasing
  Eigen::MatrixXd vectors;  // column j pairs with values(j)
};

// Dense symmetric eigendecomposition with eigenvalues reported in
// non-increasing order. Ties keep the backend's ordering, so callers must
// not rely on the orientation of eigenvectors within a tied block.
inline SymmetricEigen symmetric_eigen(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("symmetric eigendecomposition failed to converge");
  }
  SymmetricEigen out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

}  // namespace multirdpg

#endif  // MULTIRDPG_LINALG_HPP
