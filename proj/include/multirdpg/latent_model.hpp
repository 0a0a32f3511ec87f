#ifndef MULTIRDPG_LATENT_MODEL_HPP
#define MULTIRDPG_LATENT_MODEL_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "multirdpg/adjacency.hpp"

namespace multirdpg {

// Link function mapping latent inner products to edge probabilities.
//   identity  f(x) = x           (caller guarantees values land in [0,1])
//   clamp01   f(x) = min(max(0, x), 1)
//   relu      f(x) = max(x, 0)   (generation-only; sampling checks f(x) <= 1)
enum class Link { identity, clamp01, relu };

std::string link_name(Link link);
Link link_from_name(const std::string& name);

double apply_link(Link link, double x);

// Shared orthonormal basis U (n x d) with one nonnegative diagonal weight
// vector per graph: graph k has edge-probability matrix f(U diag(lambda_k) U^T).
class LatentModel {
 public:
  LatentModel(Eigen::MatrixXd u, std::vector<Eigen::VectorXd> lambdas,
              Link link);

  int n() const { return static_cast<int>(u_.rows()); }
  int d() const { return static_cast<int>(u_.cols()); }
  int num_graphs() const { return static_cast<int>(lambdas_.size()); }
  const Eigen::MatrixXd& u() const { return u_; }
  const std::vector<Eigen::VectorXd>& lambdas() const { return lambdas_; }
  const Eigen::VectorXd& lambda(int k) const;  // k is 1-based
  Link link() const { return link_; }

 private:
  Eigen::MatrixXd u_;
  std::vector<Eigen::VectorXd> lambdas_;
  Link link_;
};

// f(U diag(lambda_k) U^T) entrywise, diagonal included. k is 1-based.
Eigen::MatrixXd edge_probabilities(const LatentModel& model, int k);

// Independent Bernoulli draw per unordered pair; symmetric, zero diagonal,
// deterministic given the seed. Throws NumericalError if any probability
// falls outside [0,1] after the link.
AdjacencyMatrix sample_graph(const LatentModel& model, int k,
                             std::uint64_t seed);

}  // namespace multirdpg

#endif  // MULTIRDPG_LATENT_MODEL_HPP
