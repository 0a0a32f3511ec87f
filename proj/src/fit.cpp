#include "multirdpg/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "multirdpg/errors.hpp"
#include "multirdpg/linalg.hpp"
#include "multirdpg/rng.hpp"

namespace multirdpg {

std::string init_name(Init init) {
  return init == Init::average_spectral ? "average-spectral"
                                        : "random-orthonormal";
}

Init init_from_name(const std::string& name) {
  if (name == "average-spectral") return Init::average_spectral;
  if (name == "random-orthonormal") return Init::random_orthonormal;
  throw DataError("unknown initialization rule: " + name);
}

namespace {

void validate_options(const FitOptions& options, int n) {
  if (options.d < 1 || options.d > n) {
    throw DataError("rank d must satisfy 1 <= d <= n (d=" +
                    std::to_string(options.d) + ", n=" + std::to_string(n) +
                    ")");
  }
  if (options.max_iterations < 1) {
    throw DataError("max-iterations must be positive");
  }
  if (!(options.tolerance > 0.0)) {
    throw DataError("tolerance must be positive");
  }
}

int common_size(const std::vector<PsdGraphMatrix>& aplus) {
  if (aplus.empty()) {
    throw DataError("need at least one graph");
  }
  const int n = aplus.front().n();
  for (const auto& a : aplus) {
    if (a.n() != n) {
      throw DataError("graphs must share the node count");
    }
  }
  return n;
}

Eigen::MatrixXd average_matrix(const std::vector<PsdGraphMatrix>& aplus) {
  Eigen::MatrixXd avg =
      Eigen::MatrixXd::Zero(aplus.front().n(), aplus.front().n());
  for (const auto& a : aplus) avg += a.matrix();
  avg /= static_cast<double>(aplus.size());
  return avg;
}

// Flip each column so its largest-magnitude entry is positive, and order
// columns by total weight across graphs (descending, ties by index). Keeps
// serialized output stable; U is sign- and order-ambiguous per column.
void canonicalize_columns(Eigen::MatrixXd& u,
                          std::vector<Eigen::VectorXd>& lambdas) {
  const int d = static_cast<int>(u.cols());
  Eigen::VectorXd weight = Eigen::VectorXd::Zero(d);
  for (const auto& lambda : lambdas) weight += lambda;
  std::vector<int> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return weight(a) > weight(b); });
  Eigen::MatrixXd u_sorted(u.rows(), d);
  for (int j = 0; j < d; ++j) u_sorted.col(j) = u.col(order[j]);
  for (auto& lambda : lambdas) {
    Eigen::VectorXd sorted(d);
    for (int j = 0; j < d; ++j) sorted(j) = lambda(order[j]);
    lambda = std::move(sorted);
  }
  for (int j = 0; j < d; ++j) {
    Eigen::Index peak;
    u_sorted.col(j).cwiseAbs().maxCoeff(&peak);
    if (u_sorted(peak, j) < 0.0) u_sorted.col(j) = -u_sorted.col(j);
  }
  u = std::move(u_sorted);
}

void canonicalize_signs(Eigen::MatrixXd& u) {
  for (Eigen::Index j = 0; j < u.cols(); ++j) {
    Eigen::Index peak;
    u.col(j).cwiseAbs().maxCoeff(&peak);
    if (u(peak, j) < 0.0) u.col(j) = -u.col(j);
  }
}

Eigen::MatrixXd initial_basis(const std::vector<PsdGraphMatrix>& aplus,
                              const FitOptions& options, int n) {
  if (options.init == Init::average_spectral) {
    const auto eig = symmetric_eigen(average_matrix(aplus));
    return eig.vectors.leftCols(options.d);
  }
  Rng rng(options.seed);
  Eigen::MatrixXd g(n, options.d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < options.d; ++j) g(i, j) = rng.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  return Eigen::MatrixXd(qr.householderQ() *
                         Eigen::MatrixXd::Identity(n, options.d));
}

}  // namespace

double joint_objective(const std::vector<PsdGraphMatrix>& aplus,
                       const Eigen::MatrixXd& u,
                       const std::vector<Eigen::VectorXd>& lambdas) {
  if (aplus.size() != lambdas.size()) {
    throw DataError("graph count and weight count differ");
  }
  double total = 0.0;
  for (std::size_t k = 0; k < aplus.size(); ++k) {
    const Eigen::MatrixXd recon =
        u * lambdas[k].asDiagonal() * u.transpose();
    total += (aplus[k].matrix() - recon).squaredNorm();
  }
  return total;
}

SingleRdpgFit fit_rdpg_single(const PsdGraphMatrix& aplus, int d) {
  if (d < 1 || d > aplus.n()) {
    throw DataError("rank d must satisfy 1 <= d <= n");
  }
  const auto eig = symmetric_eigen(aplus.matrix());
  SingleRdpgFit fit;
  fit.u = eig.vectors.leftCols(d);
  fit.lambda = eig.values.head(d).cwiseMax(0.0);
  canonicalize_signs(fit.u);
  fit.objective =
      (aplus.matrix() - fit.u * fit.lambda.asDiagonal() * fit.u.transpose())
          .squaredNorm();
  return fit;
}

Eigen::MatrixXd update_u(const std::vector<PsdGraphMatrix>& aplus,
                         const Eigen::MatrixXd& u_old,
                         const std::vector<Eigen::VectorXd>& lambdas) {
  const int n = common_size(aplus);
  const int d = static_cast<int>(u_old.cols());
  if (u_old.rows() != n) {
    throw DataError("basis row count must match graph size");
  }
  if (aplus.size() != lambdas.size()) {
    throw DataError("graph count and weight count differ");
  }
  for (const auto& lambda : lambdas) {
    if (lambda.size() != d) {
      throw DataError("weight vector length must equal d");
    }
  }

  Eigen::MatrixXd stacked = Eigen::MatrixXd::Zero(n, d);
  for (std::size_t k = 0; k < aplus.size(); ++k) {
    stacked += aplus[k].matrix() * u_old * lambdas[k].asDiagonal();
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      stacked, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  const double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
  if (!(sigma_max > 0.0)) {
    // The surrogate is constant in U; keep the current iterate.
    return u_old;
  }
  const double rank_tol =
      static_cast<double>(std::max(n, d)) *
      std::numeric_limits<double>::epsilon() * sigma_max;
  int rank = 0;
  while (rank < d && sigma(rank) > rank_tol) ++rank;

  if (rank == d) {
    return svd.matrixU() * svd.matrixV().transpose();
  }

  // Rank-deficient Procrustes: the left singular vectors beyond `rank` are
  // arbitrary. Complete them by Gram-Schmidt over U_old's columns (then the
  // standard basis) so the undetermined directions stay put across
  // iterations, which keeps the descent guarantee meaningful.
  Eigen::MatrixXd b(n, d);
  b.leftCols(rank) = svd.matrixU().leftCols(rank);
  int filled = rank;
  auto try_candidate = [&](Eigen::VectorXd v) {
    if (filled == d) return;
    for (int pass = 0; pass < 2; ++pass) {
      v -= b.leftCols(filled) * (b.leftCols(filled).transpose() * v);
    }
    const double norm = v.norm();
    if (norm > 1e-8) {
      b.col(filled++) = v / norm;
    }
  };
  for (int j = 0; j < d && filled < d; ++j) try_candidate(u_old.col(j));
  for (int i = 0; i < n && filled < d; ++i) {
    try_candidate(Eigen::VectorXd::Unit(n, i));
  }
  if (filled < d) {
    throw NumericalError("failed to complete orthonormal basis");
  }
  return b * svd.matrixV().transpose();
}

std::vector<Eigen::VectorXd> update_lambda(
    const std::vector<PsdGraphMatrix>& aplus, const Eigen::MatrixXd& u) {
  common_size(aplus);
  std::vector<Eigen::VectorXd> lambdas;
  lambdas.reserve(aplus.size());
  for (const auto& a : aplus) {
    const Eigen::VectorXd z =
        (u.transpose() * a.matrix() * u).diagonal();
    lambdas.push_back(z.cwiseMax(0.0));
  }
  return lambdas;
}

MultiRdpgFit fit_multi_rdpg_psd(const std::vector<PsdGraphMatrix>& aplus,
                                const FitOptions& options) {
  const int n = common_size(aplus);
  validate_options(options, n);

  Eigen::MatrixXd u = initial_basis(aplus, options, n);
  std::vector<Eigen::VectorXd> lambdas = update_lambda(aplus, u);

  std::vector<double> trace;
  trace.reserve(16);
  trace.push_back(joint_objective(aplus, u, lambdas));

  bool converged = false;
  int iterations = 0;
  for (int t = 0; t < options.max_iterations; ++t) {
    u = update_u(aplus, u, lambdas);
    lambdas = update_lambda(aplus, u);
    const double obj = joint_objective(aplus, u, lambdas);
    const double prev = trace.back();
    trace.push_back(obj);
    ++iterations;
    const double rel = (prev - obj) / std::max(prev, 1e-12);
    if (rel < options.tolerance) {
      converged = true;
      break;
    }
  }

  canonicalize_columns(u, lambdas);
  MultiRdpgFit fit{LatentModel(std::move(u), std::move(lambdas),
                               Link::identity),
                   std::move(trace), converged, iterations};
  return fit;
}

MultiRdpgFit fit_multi_rdpg(const std::vector<AdjacencyMatrix>& graphs,
                            const FitOptions& options) {
  return fit_multi_rdpg_psd(positive_parts(graphs), options);
}

CommonLambdaFit fit_common_lambda_psd(const std::vector<PsdGraphMatrix>& aplus,
                                      int d) {
  const int n = common_size(aplus);
  if (d < 1 || d > n) {
    throw DataError("rank d must satisfy 1 <= d <= n");
  }
  const auto eig = symmetric_eigen(average_matrix(aplus));
  CommonLambdaFit fit;
  fit.u = eig.vectors.leftCols(d);
  // The average of PSD matrices is PSD; the clamp only strips rounding noise.
  fit.lambda = eig.values.head(d).cwiseMax(0.0);
  canonicalize_signs(fit.u);
  std::vector<Eigen::VectorXd> shared(aplus.size(), fit.lambda);
  fit.objective = joint_objective(aplus, fit.u, shared);
  return fit;
}

CommonLambdaFit fit_common_lambda(const std::vector<AdjacencyMatrix>& graphs,
                                  int d) {
  return fit_common_lambda_psd(positive_parts(graphs), d);
}

std::vector<PsdGraphMatrix> positive_parts(
    const std::vector<AdjacencyMatrix>& graphs) {
  std::vector<PsdGraphMatrix> out;
  out.reserve(graphs.size());
  for (const auto& g : graphs) out.push_back(positive_part(g));
  return out;
}

}  // namespace multirdpg
