#include "multirdpg/psd.hpp"

#include <utility>

#include "multirdpg/errors.hpp"
#include "multirdpg/linalg.hpp"

namespace multirdpg {

namespace {

constexpr double kSymmetryTol = 1e-10;
constexpr double kEigenvalueTol = 1e-8;

void check_symmetric(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DataError("PSD graph matrix must be square and non-empty");
  }
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol) {
    throw DataError("PSD graph matrix must be symmetric within 1e-10");
  }
}

}  // namespace

PsdGraphMatrix::PsdGraphMatrix(Eigen::MatrixXd entries)
    : entries_(std::move(entries)) {
  check_symmetric(entries_);
  const auto eig = symmetric_eigen(entries_);
  if (eig.values.minCoeff() < -kEigenvalueTol) {
    throw DataError("matrix is not positive semi-definite");
  }
}

PsdGraphMatrix::PsdGraphMatrix(Eigen::MatrixXd entries, Trusted)
    : entries_(std::move(entries)) {
  check_symmetric(entries_);
}

PsdGraphMatrix PsdGraphMatrix::trusted(Eigen::MatrixXd entries) {
  return PsdGraphMatrix(std::move(entries), Trusted{});
}

Eigen::MatrixXd symmetric_positive_part(const Eigen::MatrixXd& m) {
  const auto eig = symmetric_eigen(m);
  const Eigen::VectorXd clipped = eig.values.cwiseMax(0.0);
  Eigen::MatrixXd result =
      eig.vectors * clipped.asDiagonal() * eig.vectors.transpose();
  // Exact symmetry despite rounding in the triple product.
  result = 0.5 * (result + result.transpose());
  return result;
}

PsdGraphMatrix positive_part(const AdjacencyMatrix& a) {
  return PsdGraphMatrix::trusted(symmetric_positive_part(a.matrix()));
}

}  // namespace multirdpg
