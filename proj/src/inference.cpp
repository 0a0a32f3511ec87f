#include "multirdpg/inference.hpp"

#include <utility>

#include "multirdpg/errors.hpp"
#include "multirdpg/parallel.hpp"
#include "multirdpg/rng.hpp"

namespace multirdpg {

namespace {

int common_size(const std::vector<AdjacencyMatrix>& graphs) {
  if (graphs.empty()) {
    throw DataError("need at least one graph");
  }
  const int n = graphs.front().n();
  for (const auto& g : graphs) {
    if (g.n() != n) {
      throw DataError("graphs must share the node count");
    }
  }
  return n;
}

}  // namespace

TestStatistic test_statistic(const std::vector<AdjacencyMatrix>& graphs,
                             int d, const FitOptions& fit_options) {
  if (graphs.size() < 2) {
    throw DataError("test statistic needs at least two graphs");
  }
  common_size(graphs);
  const auto aplus = positive_parts(graphs);
  FitOptions options = fit_options;
  options.d = d;
  TestStatistic t;
  t.null_objective = fit_common_lambda_psd(aplus, d).objective;
  t.alternative_objective = fit_multi_rdpg_psd(aplus, options).objective();
  t.statistic = t.null_objective - t.alternative_objective;
  return t;
}

std::vector<AdjacencyMatrix> permute_graphs(
    const std::vector<AdjacencyMatrix>& graphs, std::uint64_t seed) {
  const int n = common_size(graphs);
  const int num_graphs = static_cast<int>(graphs.size());
  if (num_graphs == 1) {
    return graphs;
  }
  Rng rng(seed);
  std::vector<Eigen::MatrixXd> permuted;
  permuted.reserve(graphs.size());
  for (const auto& g : graphs) permuted.push_back(g.matrix());
  std::vector<double> column(static_cast<std::size_t>(num_graphs));
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      for (int k = 0; k < num_graphs; ++k) column[k] = permuted[k](i, j);
      rng.shuffle(column.begin(), column.end());
      for (int k = 0; k < num_graphs; ++k) {
        permuted[k](i, j) = column[k];
        permuted[k](j, i) = column[k];
      }
    }
  }
  std::vector<AdjacencyMatrix> out;
  out.reserve(permuted.size());
  for (auto& m : permuted) out.emplace_back(std::move(m));
  return out;
}

TestResult permutation_test(const std::vector<AdjacencyMatrix>& graphs,
                            const TestOptions& options) {
  if (graphs.size() < 2) {
    throw DataError("permutation test needs at least two graphs");
  }
  if (options.n_permutations < 1) {
    throw DataError("number of permutations must be positive");
  }
  common_size(graphs);

  TestResult result;
  result.options = options;
  result.observed = test_statistic(graphs, options.d, options.fit_options);

  const int b_total = options.n_permutations;
  result.null_statistics.assign(static_cast<std::size_t>(b_total), 0.0);
  parallel_for(static_cast<std::size_t>(b_total), options.threads,
               [&](std::size_t idx) {
                 const std::uint64_t b = static_cast<std::uint64_t>(idx) + 1;
                 const auto permuted =
                     permute_graphs(graphs, replicate_seed(options.seed, b));
                 result.null_statistics[idx] =
                     test_statistic(permuted, options.d, options.fit_options)
                         .statistic;
               });

  int count = 0;
  for (double t_star : result.null_statistics) {
    if (t_star >= result.observed.statistic) ++count;
  }
  if (options.add_one_convention) {
    result.p_value = static_cast<double>(count + 1) /
                     static_cast<double>(b_total + 1);
  } else {
    result.p_value = static_cast<double>(count) / static_cast<double>(b_total);
  }

  if (result.observed.statistic < -1e-6) {
    result.warnings.push_back(
        "observed statistic is strongly negative (" +
        std::to_string(result.observed.statistic) +
        "): the alternative fit likely stopped short of its optimum");
  }
  return result;
}

}  // namespace multirdpg
