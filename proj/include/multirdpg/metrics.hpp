#ifndef MULTIRDPG_METRICS_HPP
#define MULTIRDPG_METRICS_HPP

#include <Eigen/Dense>

#include "multirdpg/latent_model.hpp"

namespace multirdpg {

// Operator 2-norm of the difference of the orthogonal projectors onto the
// two column spans. Basis-invariant, symmetric, in [0,1] for equal-dimension
// frames. Inputs must be orthonormal within 1e-6.
double subspace_distance(const Eigen::MatrixXd& u_hat,
                         const Eigen::MatrixXd& u);

// Mean squared Frobenius distance between the true edge-probability matrices
// f(U diag(lambda^k) U^T) and the raw fitted reconstructions (the estimate is
// not passed through the link).
double adjacency_error(const LatentModel& truth, const LatentModel& estimate);

// Normalized +/-1 sign-pattern basis: all-ones, alternating, and pairwise
// alternating columns. d=2 needs n even; d=3 needs n divisible by 4.
Eigen::MatrixXd build_u_structured(int n, int d);

}  // namespace multirdpg

#endif  // MULTIRDPG_METRICS_HPP
