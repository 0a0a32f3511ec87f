#include "multirdpg/latent_model.hpp"

#include <algorithm>
#include <utility>

#include "multirdpg/errors.hpp"
#include "multirdpg/rng.hpp"

namespace multirdpg {

namespace {
constexpr double kOrthoTol = 1e-8;
constexpr double kProbSlack = 1e-12;  // rounding slack on probability checks
}  // namespace

std::string link_name(Link link) {
  switch (link) {
    case Link::identity:
      return "identity";
    case Link::clamp01:
      return "clamp01";
    case Link::relu:
      return "relu";
  }
  return "identity";
}

Link link_from_name(const std::string& name) {
  if (name == "identity") return Link::identity;
  if (name == "clamp01") return Link::clamp01;
  if (name == "relu") return Link::relu;
  throw DataError("unknown link function: " + name);
}

double apply_link(Link link, double x) {
  switch (link) {
    case Link::identity:
      return x;
    case Link::clamp01:
      return std::min(std::max(0.0, x), 1.0);
    case Link::relu:
      return std::max(x, 0.0);
  }
  return x;
}

LatentModel::LatentModel(Eigen::MatrixXd u,
                         std::vector<Eigen::VectorXd> lambdas, Link link)
    : u_(std::move(u)), lambdas_(std::move(lambdas)), link_(link) {
  const int n = static_cast<int>(u_.rows());
  const int d = static_cast<int>(u_.cols());
  if (n == 0 || d == 0 || d > n) {
    throw DataError("latent basis must be n x d with 1 <= d <= n");
  }
  const Eigen::MatrixXd gram = u_.transpose() * u_;
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(d, d);
  if ((gram - eye).cwiseAbs().maxCoeff() > kOrthoTol) {
    throw DataError("latent basis columns must be orthonormal within 1e-8");
  }
  if (lambdas_.empty()) {
    throw DataError("latent model needs at least one weight vector");
  }
  for (const auto& lambda : lambdas_) {
    if (lambda.size() != d) {
      throw DataError("weight vector length must equal d");
    }
    if (lambda.size() > 0 && lambda.minCoeff() < 0.0) {
      throw DataError("weight entries must be nonnegative");
    }
  }
}

const Eigen::VectorXd& LatentModel::lambda(int k) const {
  if (k < 1 || k > num_graphs()) {
    throw DataError("graph index " + std::to_string(k) +
                    " out of range 1.." + std::to_string(num_graphs()));
  }
  return lambdas_[static_cast<std::size_t>(k - 1)];
}

Eigen::MatrixXd edge_probabilities(const LatentModel& model, int k) {
  const Eigen::VectorXd& lambda = model.lambda(k);
  Eigen::MatrixXd w =
      model.u() * lambda.asDiagonal() * model.u().transpose();
  for (Eigen::Index i = 0; i < w.rows(); ++i)
    for (Eigen::Index j = 0; j < w.cols(); ++j)
      w(i, j) = apply_link(model.link(), w(i, j));
  return w;
}

AdjacencyMatrix sample_graph(const LatentModel& model, int k,
                             std::uint64_t seed) {
  const Eigen::MatrixXd p = edge_probabilities(model, k);
  const int n = model.n();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (p(i, j) < -kProbSlack || p(i, j) > 1.0 + kProbSlack) {
        throw NumericalError(
            "edge probability " + std::to_string(p(i, j)) + " at (" +
            std::to_string(i) + "," + std::to_string(j) +
            ") outside [0,1]; use the clamp01 link or rescale the model");
      }
    }
  }
  Rng rng(seed);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.bernoulli(p(i, j))) {
        a(i, j) = 1.0;
        a(j, i) = 1.0;
      }
    }
  }
  return AdjacencyMatrix(std::move(a));
}

}  // namespace multirdpg
