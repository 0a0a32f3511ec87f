#ifndef MULTIRDPG_INFERENCE_HPP
#define MULTIRDPG_INFERENCE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "multirdpg/adjacency.hpp"
#include "multirdpg/fit.hpp"

namespace multirdpg {

struct TestOptions {
  int d = 1;
  int n_permutations = 1000;
  std::uint64_t seed = 0;
  FitOptions fit_options;  // alternative fit; its d is overridden by d above
  // Count the observed statistic among the replicates, guaranteeing p > 0.
  bool add_one_convention = false;
  int threads = 1;
};

struct TestStatistic {
  double statistic = 0.0;             // null_objective - alternative_objective
  double null_objective = 0.0;        // exact common-weights optimum
  double alternative_objective = 0.0; // alternating-minimizer optimum
};

struct TestResult {
  TestStatistic observed;
  std::vector<double> null_statistics;  // one per permutation replicate
  double p_value = 0.0;
  TestOptions options;
  std::vector<std::string> warnings;
};

// Difference between the exact common-weights optimum and the per-graph
// alternating fit. Nonnegative up to the alternative fit's optimization
// error; a strongly negative value indicates a bad alternative fit.
TestStatistic test_statistic(const std::vector<AdjacencyMatrix>& graphs,
                             int d, const FitOptions& fit_options);

// For every unordered pair (i <= j), permutes the K entries uniformly at
// random across graphs and mirrors the lower triangle. Preserves the
// per-pair multiset of values; deterministic given the seed.
std::vector<AdjacencyMatrix> permute_graphs(
    const std::vector<AdjacencyMatrix>& graphs, std::uint64_t seed);

// Entrywise permutation test for equality of the per-graph weights.
// Replicate b runs on seed ^ b, so the result is identical whether
// replicates run serially or across threads.
TestResult permutation_test(const std::vector<AdjacencyMatrix>& graphs,
                            const TestOptions& options);

}  // namespace multirdpg

#endif  // MULTIRDPG_INFERENCE_HPP
