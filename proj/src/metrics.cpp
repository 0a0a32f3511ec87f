#include "multirdpg/metrics.hpp"

#include <cmath>
#include <string>

#include "multirdpg/errors.hpp"

namespace multirdpg {

namespace {

void check_orthonormal(const Eigen::MatrixXd& u, const char* label) {
  const Eigen::MatrixXd gram = u.transpose() * u;
  const Eigen::MatrixXd eye =
      Eigen::MatrixXd::Identity(u.cols(), u.cols());
  if ((gram - eye).cwiseAbs().maxCoeff() > 1e-6) {
    throw DataError(std::string(label) + " is not orthonormal within 1e-6");
  }
}

}  // namespace

double subspace_distance(const Eigen::MatrixXd& u_hat,
                         const Eigen::MatrixXd& u) {
  if (u_hat.rows() != u.rows() || u_hat.cols() != u.cols()) {
    throw DataError("subspace distance needs frames of identical shape");
  }
  check_orthonormal(u_hat, "first frame");
  check_orthonormal(u, "second frame");
  const Eigen::MatrixXd diff =
      u_hat * u_hat.transpose() - u * u.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      diff, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("projector eigendecomposition failed");
  }
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

double adjacency_error(const LatentModel& truth, const LatentModel& estimate) {
  if (truth.n() != estimate.n()) {
    throw DataError("models must share the node count");
  }
  if (truth.num_graphs() != estimate.num_graphs()) {
    throw DataError("models must share the graph count");
  }
  const int num_graphs = truth.num_graphs();
  double total = 0.0;
  for (int k = 1; k <= num_graphs; ++k) {
    const Eigen::MatrixXd p_true = edge_probabilities(truth, k);
    const Eigen::MatrixXd recon = estimate.u() *
                                  estimate.lambda(k).asDiagonal() *
                                  estimate.u().transpose();
    total += (p_true - recon).squaredNorm();
  }
  return total / static_cast<double>(num_graphs);
}

Eigen::MatrixXd build_u_structured(int n, int d) {
  if (d != 2 && d != 3) {
    throw DataError("structured basis supports d in {2, 3}");
  }
  if (d == 2 && (n < 2 || n % 2 != 0)) {
    throw DataError("structured basis with d=2 needs n even");
  }
  if (d == 3 && (n < 4 || n % 4 != 0)) {
    throw DataError("structured basis with d=3 needs n divisible by 4");
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  Eigen::MatrixXd u(n, d);
  for (int i = 0; i < n; ++i) {
    u(i, 0) = scale;
    u(i, 1) = (i % 2 == 0) ? scale : -scale;
    if (d == 3) u(i, 2) = (i % 4 < 2) ? scale : -scale;
  }
  return u;
}

}  // namespace multirdpg
