#ifndef MULTIRDPG_FIT_HPP
#define MULTIRDPG_FIT_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "multirdpg/adjacency.hpp"
#include "multirdpg/latent_model.hpp"
#include "multirdpg/psd.hpp"

namespace multirdpg {

enum class Init { average_spectral, random_orthonormal };

std::string init_name(Init init);
Init init_from_name(const std::string& name);

struct FitOptions {
  int d = 1;
  int max_iterations = 1000;
  double tolerance = 1e-8;  // relative objective-decrease threshold
  Init init = Init::average_spectral;
  std::uint64_t seed = 0;  // used by random-orthonormal init only
};

// Result of the alternating minimizer. The objective trace holds the joint
// squared-Frobenius objective at initialization and after each iteration;
// it is non-increasing up to floating-point slack.
struct MultiRdpgFit {
  LatentModel model;
  std::vector<double> objective_trace;
  bool converged = false;
  int iterations = 0;

  double objective() const { return objective_trace.back(); }
};

// Best rank-d approximation with a single weight vector shared by all
// graphs: the exact minimizer of the common-weights problem.
struct CommonLambdaFit {
  Eigen::MatrixXd u;
  Eigen::VectorXd lambda;
  double objective = 0.0;
};

struct SingleRdpgFit {
  Eigen::MatrixXd u;
  Eigen::VectorXd lambda;
  double objective = 0.0;
};

// sum_k || A+^k - U diag(lambda^k) U^T ||_F^2
double joint_objective(const std::vector<PsdGraphMatrix>& aplus,
                       const Eigen::MatrixXd& u,
                       const std::vector<Eigen::VectorXd>& lambdas);

// Closed-form single-graph fit: top-d eigenvectors of A+ and the positive
// parts of the top-d eigenvalues.
SingleRdpgFit fit_rdpg_single(const PsdGraphMatrix& aplus, int d);

// Procrustes step: U <- B C^T from the SVD of sum_k A+^k U_old diag(lambda^k).
// Never increases the joint objective. If the stacked matrix is rank
// deficient the undetermined directions are completed deterministically
// from U_old's columns; a zero matrix returns U_old unchanged.
Eigen::MatrixXd update_u(const std::vector<PsdGraphMatrix>& aplus,
                         const Eigen::MatrixXd& u_old,
                         const std::vector<Eigen::VectorXd>& lambdas);

// Exact minimizer in the weights for fixed U: lambda^k_j = max(0, Z^k_jj)
// with Z^k = U^T A+^k U.
std::vector<Eigen::VectorXd> update_lambda(
    const std::vector<PsdGraphMatrix>& aplus, const Eigen::MatrixXd& u);

MultiRdpgFit fit_multi_rdpg(const std::vector<AdjacencyMatrix>& graphs,
                            const FitOptions& options);
MultiRdpgFit fit_multi_rdpg_psd(const std::vector<PsdGraphMatrix>& aplus,
                                const FitOptions& options);

CommonLambdaFit fit_common_lambda(const std::vector<AdjacencyMatrix>& graphs,
                                  int d);
CommonLambdaFit fit_common_lambda_psd(const std::vector<PsdGraphMatrix>& aplus,
                                      int d);

std::vector<PsdGraphMatrix> positive_parts(
    const std::vector<AdjacencyMatrix>& graphs);

}  // namespace multirdpg

#endif  // MULTIRDPG_FIT_HPP
