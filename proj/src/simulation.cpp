#include "multirdpg/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "multirdpg/errors.hpp"
#include "multirdpg/inference.hpp"
#include "multirdpg/metrics.hpp"
#include "multirdpg/parallel.hpp"
#include "multirdpg/rng.hpp"

namespace multirdpg {

std::string sim_setting_name(SimSetting setting) {
  switch (setting) {
    case SimSetting::setting1:
      return "setting1";
    case SimSetting::setting2:
      return "setting2";
    case SimSetting::null_type1:
      return "null-typeI";
    case SimSetting::power:
      return "power";
  }
  return "setting1";
}

SimSetting sim_setting_from_name(const std::string& name) {
  if (name == "setting1") return SimSetting::setting1;
  if (name == "setting2") return SimSetting::setting2;
  if (name == "null-typeI" || name == "null-type1" || name == "type1") {
    return SimSetting::null_type1;
  }
  if (name == "power") return SimSetting::power;
  throw DataError("unknown simulation setting: " + name);
}

void SimulationSpec::validate() const {
  if (replicates < 1) throw DataError("replicates must be positive");
  if (num_graphs < 1) throw DataError("K must be positive");
  if (!(fit_options.tolerance > 0.0)) {
    throw DataError("tolerance must be positive");
  }
  switch (setting) {
    case SimSetting::setting1:
      if (d != 3) throw DataError("setting1 requires d=3");
      if (n < 4 || n % 4 != 0) {
        throw DataError("setting1 requires n divisible by 4");
      }
      break;
    case SimSetting::setting2:
      if (d != 3) throw DataError("setting2 requires d=3");
      if (n < 4 || n % 4 != 0) {
        throw DataError("setting2 requires n divisible by 4");
      }
      if (num_graphs < 2) throw DataError("setting2 requires K >= 2");
      if (permutation < 1 || permutation > 6) {
        throw DataError("setting2 permutation id must be in 1..6");
      }
      break;
    case SimSetting::null_type1:
    case SimSetting::power:
      if (num_graphs != 2) {
        throw DataError("test studies use exactly K=2 graphs");
      }
      if (d != 2 && d != 3) throw DataError("test studies require d in {2,3}");
      if (d == 2 && n % 2 != 0) throw DataError("d=2 requires n even");
      if (d == 3 && n % 4 != 0) {
        throw DataError("d=3 requires n divisible by 4");
      }
      if (permutations < 1) {
        throw DataError("number of permutations must be positive");
      }
      if (setting == SimSetting::power) {
        if (r_grid.empty()) throw DataError("power study needs an r grid");
        for (double r : r_grid) {
          if (r < 0.0 || r > 1.0) {
            throw DataError("r values must lie in [0,1]");
          }
        }
      }
      break;
  }
}

SummaryStat summarize(const std::vector<double>& values) {
  SummaryStat s;
  const auto count = static_cast<double>(values.size());
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / count;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std_error = std::sqrt(ss / (count - 1.0)) / std::sqrt(count);
  }
  return s;
}

Eigen::VectorXd setting2_odd_lambda(int permutation) {
  Eigen::VectorXd lambda(3);
  switch (permutation) {
    case 1: lambda << 11.5, 2.0, 0.5; break;
    case 2: lambda << 11.5, 0.5, 2.0; break;
    case 3: lambda << 2.0, 0.5, 11.5; break;
    case 4: lambda << 2.0, 11.5, 0.5; break;
    case 5: lambda << 0.5, 11.5, 2.0; break;
    case 6: lambda << 0.5, 2.0, 11.5; break;
    default:
      throw DataError("permutation id must be in 1..6");
  }
  return lambda;
}

namespace {

std::vector<AdjacencyMatrix> sample_graphs(const LatentModel& model,
                                           Rng& rng) {
  std::vector<AdjacencyMatrix> graphs;
  graphs.reserve(static_cast<std::size_t>(model.num_graphs()));
  for (int k = 1; k <= model.num_graphs(); ++k) {
    graphs.push_back(sample_graph(model, k, rng.next_u64()));
  }
  return graphs;
}

double single_recon_error(const Eigen::MatrixXd& p_true,
                          const Eigen::MatrixXd& u_hat,
                          const Eigen::VectorXd& lambda_hat) {
  return (p_true - u_hat * lambda_hat.asDiagonal() * u_hat.transpose())
      .squaredNorm();
}

// Shared core for the two estimation settings: given the truth and graphs
// for one replicate, evaluates multi-RDPG, the pooled fit, and the
// separate fits. `separate_group` assigns each 1-based graph index to a
// pooled sub-fit (every graph its own group in setting 1; evens vs odds in
// setting 2).
struct ReplicateMetrics {
  double multi_subspace, multi_adjacency;
  double all_subspace, all_adjacency;
  double separate_subspace, separate_adjacency;
};

ReplicateMetrics evaluate_estimators(const LatentModel& truth,
                                     const std::vector<AdjacencyMatrix>& graphs,
                                     const SimulationSpec& spec,
                                     const std::vector<int>& separate_group) {
  const int num_graphs = static_cast<int>(graphs.size());
  const auto aplus = positive_parts(graphs);

  FitOptions options = spec.fit_options;
  options.d = spec.d;
  options.init = Init::average_spectral;

  ReplicateMetrics out{};

  // multi-RDPG
  const MultiRdpgFit multi = fit_multi_rdpg_psd(aplus, options);
  out.multi_subspace = subspace_distance(multi.model.u(), truth.u());
  out.multi_adjacency = adjacency_error(truth, multi.model);

  // pooled fit: one basis and one weight vector for all graphs
  const CommonLambdaFit pooled = fit_common_lambda_psd(aplus, spec.d);
  out.all_subspace = subspace_distance(pooled.u, truth.u());
  {
    std::vector<Eigen::VectorXd> shared(
        static_cast<std::size_t>(num_graphs), pooled.lambda);
    const LatentModel pooled_model(pooled.u, shared, Link::identity);
    out.all_adjacency = adjacency_error(truth, pooled_model);
  }

  // separate fits, pooled within groups
  const int group_count =
      *std::max_element(separate_group.begin(), separate_group.end()) + 1;
  std::vector<Eigen::MatrixXd> group_u(static_cast<std::size_t>(group_count));
  std::vector<Eigen::VectorXd> group_lambda(
      static_cast<std::size_t>(group_count));
  for (int g = 0; g < group_count; ++g) {
    std::vector<PsdGraphMatrix> members;
    for (int k = 0; k < num_graphs; ++k) {
      if (separate_group[static_cast<std::size_t>(k)] == g) {
        members.push_back(aplus[static_cast<std::size_t>(k)]);
      }
    }
    const CommonLambdaFit fit = fit_common_lambda_psd(members, spec.d);
    group_u[static_cast<std::size_t>(g)] = fit.u;
    group_lambda[static_cast<std::size_t>(g)] = fit.lambda;
  }
  double subspace_sum = 0.0;
  double adjacency_sum = 0.0;
  for (int k = 0; k < num_graphs; ++k) {
    const int g = separate_group[static_cast<std::size_t>(k)];
    const Eigen::MatrixXd p_true = edge_probabilities(truth, k + 1);
    subspace_sum +=
        subspace_distance(group_u[static_cast<std::size_t>(g)], truth.u());
    adjacency_sum += single_recon_error(p_true,
                                        group_u[static_cast<std::size_t>(g)],
                                        group_lambda[static_cast<std::size_t>(g)]);
  }
  out.separate_subspace = subspace_sum / static_cast<double>(num_graphs);
  out.separate_adjacency = adjacency_sum / static_cast<double>(num_graphs);
  return out;
}

EstimationReport run_estimation(const SimulationSpec& spec,
                                bool setting2_layout) {
  spec.validate();
  const int reps = spec.replicates;
  EstimationReport report;
  report.spec = spec;
  report.estimators = {
      {"multi-rdpg", std::vector<double>(reps), std::vector<double>(reps)},
      {"rdpg-all", std::vector<double>(reps), std::vector<double>(reps)},
      {"rdpg-separate", std::vector<double>(reps), std::vector<double>(reps)},
  };

  const Eigen::MatrixXd u_true = build_u_structured(spec.n, spec.d);

  parallel_for(static_cast<std::size_t>(reps), spec.threads,
               [&](std::size_t rep) {
    Rng rng(derive_seed(spec.seed, rep));

    std::vector<Eigen::VectorXd> lambdas(
        static_cast<std::size_t>(spec.num_graphs));
    std::vector<int> separate_group(static_cast<std::size_t>(spec.num_graphs));
    Link link = Link::identity;
    if (setting2_layout) {
      link = Link::clamp01;
      const Eigen::VectorXd odd = setting2_odd_lambda(spec.permutation);
      Eigen::VectorXd even(3);
      even << 11.5, 2.0, 0.5;
      for (int k = 1; k <= spec.num_graphs; ++k) {
        lambdas[static_cast<std::size_t>(k - 1)] = (k % 2 == 0) ? even : odd;
        separate_group[static_cast<std::size_t>(k - 1)] = k % 2;
      }
    } else {
      for (int k = 0; k < spec.num_graphs; ++k) {
        Eigen::VectorXd lambda(3);
        lambda << rng.uniform(8.0, 15.0), rng.uniform(1.0, 4.0),
            rng.uniform(0.0, 1.0);
        lambdas[static_cast<std::size_t>(k)] = lambda;
        separate_group[static_cast<std::size_t>(k)] = k;
      }
    }

    const LatentModel truth(u_true, lambdas, link);
    const auto graphs = sample_graphs(truth, rng);
    const ReplicateMetrics m =
        evaluate_estimators(truth, graphs, spec, separate_group);
    report.estimators[0].subspace[rep] = m.multi_subspace;
    report.estimators[0].adjacency[rep] = m.multi_adjacency;
    report.estimators[1].subspace[rep] = m.all_subspace;
    report.estimators[1].adjacency[rep] = m.all_adjacency;
    report.estimators[2].subspace[rep] = m.separate_subspace;
    report.estimators[2].adjacency[rep] = m.separate_adjacency;
  });
  return report;
}

// Weight pairs for the K=2 test studies. Under the null (r absent) the two
// graphs share one vector; under the r-indexed alternative the mass is
// split in opposite directions.
std::pair<Eigen::VectorXd, Eigen::VectorXd> test_study_lambdas(
    const SimulationSpec& spec, double r, bool alternative) {
  const double n = static_cast<double>(spec.n);
  Eigen::VectorXd first(spec.d);
  Eigen::VectorXd second(spec.d);
  if (!alternative) {
    if (spec.d == 2) {
      first << n / 4.0, n / 5.0;
    } else {
      first << n / 2.0, n / 4.0, n / 400.0;
    }
    second = first;
  } else if (spec.d == 2) {
    first << n / 4.0 * (1.0 + r), n / 4.0 * (1.0 - r);
    second << n / 4.0 * (1.0 - r), n / 4.0 * (1.0 + r);
  } else {
    first << n / 4.0 * (1.0 - r), n / 5.0 * (1.0 + r), n / 400.0 * (1.0 - r);
    second << n / 4.0 * (1.0 + r), n / 5.0 * (1.0 - r), n / 400.0 * (1.0 + r);
  }
  return {first, second};
}

double run_one_test_replicate(const SimulationSpec& spec,
                              const Eigen::MatrixXd& u_true,
                              const Eigen::VectorXd& lambda1,
                              const Eigen::VectorXd& lambda2, Link link,
                              std::uint64_t rep_seed, double* statistic) {
  Rng rng(rep_seed);
  const LatentModel truth(u_true, {lambda1, lambda2}, link);
  const auto graphs = sample_graphs(truth, rng);
  TestOptions options;
  options.d = spec.d;
  options.n_permutations = spec.permutations;
  options.seed = rng.next_u64();
  options.fit_options = spec.fit_options;
  options.threads = 1;  // parallelism lives at the replicate level
  const TestResult result = permutation_test(graphs, options);
  if (statistic != nullptr) *statistic = result.observed.statistic;
  return result.p_value;
}

}  // namespace

EstimationReport run_setting1(const SimulationSpec& spec) {
  if (spec.setting != SimSetting::setting1) {
    throw DataError("spec.setting must be setting1");
  }
  return run_estimation(spec, /*setting2_layout=*/false);
}

EstimationReport run_setting2(const SimulationSpec& spec) {
  if (spec.setting != SimSetting::setting2) {
    throw DataError("spec.setting must be setting2");
  }
  return run_estimation(spec, /*setting2_layout=*/true);
}

CalibrationReport run_type1(const SimulationSpec& spec) {
  if (spec.setting != SimSetting::null_type1) {
    throw DataError("spec.setting must be null-typeI");
  }
  spec.validate();
  CalibrationReport report;
  report.spec = spec;
  report.p_values.assign(static_cast<std::size_t>(spec.replicates), 0.0);
  report.statistics.assign(static_cast<std::size_t>(spec.replicates), 0.0);

  const Eigen::MatrixXd u_true = build_u_structured(spec.n, spec.d);
  const auto [lambda1, lambda2] =
      test_study_lambdas(spec, 0.0, /*alternative=*/false);

  parallel_for(static_cast<std::size_t>(spec.replicates), spec.threads,
               [&](std::size_t rep) {
                 report.p_values[rep] = run_one_test_replicate(
                     spec, u_true, lambda1, lambda2, Link::identity,
                     derive_seed(spec.seed, rep), &report.statistics[rep]);
               });
  return report;
}

PowerReport run_power(const SimulationSpec& spec) {
  if (spec.setting != SimSetting::power) {
    throw DataError("spec.setting must be power");
  }
  spec.validate();
  PowerReport report;
  report.spec = spec;
  report.r_grid = spec.r_grid;
  const auto reps = static_cast<std::size_t>(spec.replicates);
  report.p_values.assign(spec.r_grid.size(), std::vector<double>(reps, 0.0));
  report.statistics.assign(spec.r_grid.size(),
                           std::vector<double>(reps, 0.0));
  report.power.assign(spec.r_grid.size(), 0.0);

  const Eigen::MatrixXd u_true = build_u_structured(spec.n, spec.d);

  for (std::size_t ri = 0; ri < spec.r_grid.size(); ++ri) {
    const double r = spec.r_grid[ri];
    const auto [lambda1, lambda2] =
        test_study_lambdas(spec, r, /*alternative=*/true);
    parallel_for(reps, spec.threads, [&, ri](std::size_t rep) {
      report.p_values[ri][rep] = run_one_test_replicate(
          spec, u_true, lambda1, lambda2, Link::relu,
          derive_seed(spec.seed, ri * reps + rep),
          &report.statistics[ri][rep]);
    });
    int rejections = 0;
    for (double p : report.p_values[ri]) {
      if (p < kPowerAlpha) ++rejections;
    }
    report.power[ri] =
        static_cast<double>(rejections) / static_cast<double>(reps);
  }
  return report;
}

}  // namespace multirdpg
