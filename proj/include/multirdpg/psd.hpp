#ifndef MULTIRDPG_PSD_HPP
#define MULTIRDPG_PSD_HPP

#include <Eigen/Dense>

#include "multirdpg/adjacency.hpp"

namespace multirdpg {

// Positive semi-definite part of a graph matrix: real symmetric with all
// eigenvalues >= -1e-8 (numerical slack).
class PsdGraphMatrix {
 public:
  // Validates symmetry (1e-10 entrywise) and numerical positive
  // semi-definiteness; the eigendecomposition makes this O(n^3).
  explicit PsdGraphMatrix(Eigen::MatrixXd entries);

  // For results that are PSD by construction; checks symmetry only.
  static PsdGraphMatrix trusted(Eigen::MatrixXd entries);

  int n() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXd& matrix() const { return entries_; }

 private:
  struct Trusted {};
  PsdGraphMatrix(Eigen::MatrixXd entries, Trusted);

  Eigen::MatrixXd entries_;
};

// Reconstruction of a symmetric matrix from its nonnegative eigenpairs:
// with m = V D V^T, returns V max(D, 0) V^T. Idempotent on PSD input.
Eigen::MatrixXd symmetric_positive_part(const Eigen::MatrixXd& m);

PsdGraphMatrix positive_part(const AdjacencyMatrix& a);

}  // namespace multirdpg

#endif  // MULTIRDPG_PSD_HPP
