// Command-line front end: fit, test, simulate, metrics. All numerical work
// lives in the library; this file only resolves arguments, moves files, and
// maps exceptions to exit codes (0 ok, 1 usage, 2 data, 3 numerical).

#include <CLI11.hpp>
#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "multirdpg/adjacency.hpp"
#include "multirdpg/errors.hpp"
#include "multirdpg/fit.hpp"
#include "multirdpg/inference.hpp"
#include "multirdpg/metrics.hpp"
#include "multirdpg/rng.hpp"
#include "multirdpg/serialize.hpp"
#include "multirdpg/simulation.hpp"

namespace {

using namespace multirdpg;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumerical = 3;

struct CommonGraphArgs {
  std::vector<std::string> inputs;
  bool one_based = false;
};

std::vector<AdjacencyMatrix> load_graphs(const CommonGraphArgs& args) {
  if (args.inputs.empty()) {
    throw DataError("no input edge-list files given");
  }
  std::vector<AdjacencyMatrix> graphs;
  for (const auto& path : args.inputs) {
    auto read = read_edge_list_file(path, args.one_based);
    for (const auto& w : read.warnings) {
      std::cerr << path << ": warning: " << w << "\n";
    }
    graphs.push_back(to_adjacency(read.edge_list));
  }
  const int n = graphs.front().n();
  for (std::size_t i = 1; i < graphs.size(); ++i) {
    if (graphs[i].n() != n) {
      throw DataError("node count mismatch: " + args.inputs[0] + " has n=" +
                      std::to_string(n) + " but " + args.inputs[i] +
                      " has n=" + std::to_string(graphs[i].n()));
    }
  }
  return graphs;
}

void emit_json(const nlohmann::json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    write_json_file(j, out_path);
  }
}

void add_fit_option_flags(CLI::App* cmd, FitOptions& options,
                          std::string& init_rule) {
  cmd->add_option("--tolerance", options.tolerance,
                  "Relative objective-decrease stopping threshold")
      ->capture_default_str();
  cmd->add_option("--max-iter", options.max_iterations,
                  "Maximum alternating iterations")
      ->capture_default_str();
  cmd->add_option("--init", init_rule,
                  "Initialization: average-spectral or random-orthonormal")
      ->capture_default_str();
}

int run_fit(const CommonGraphArgs& graph_args, FitOptions options,
            const std::string& init_rule, const std::string& out_path) {
  options.init = init_from_name(init_rule);
  const auto graphs = load_graphs(graph_args);
  const MultiRdpgFit fit = fit_multi_rdpg(graphs, options);

  std::cerr << "fitted " << graphs.size() << " graph(s), n=" << fit.model.n()
            << ", d=" << fit.model.d() << "\n"
            << "objective: " << fit.objective()
            << "  iterations: " << fit.iterations
            << "  converged: " << (fit.converged ? "yes" : "no") << "\n";
  for (int k = 1; k <= fit.model.num_graphs(); ++k) {
    std::cerr << "lambda[" << k << "]:";
    const auto& lambda = fit.model.lambda(k);
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
      std::cerr << " " << lambda(i);
    }
    std::cerr << "\n";
  }

  emit_json(fit_to_json(fit, options), out_path);
  return 0;
}

int run_test(const CommonGraphArgs& graph_args, TestOptions options,
             const std::string& init_rule, bool match_edge_counts,
             const std::string& out_path) {
  options.fit_options.init = init_from_name(init_rule);
  auto graphs = load_graphs(graph_args);

  nlohmann::json downsample_note;
  if (match_edge_counts) {
    int min_edges = graphs.front().edge_count();
    for (const auto& g : graphs) {
      min_edges = std::min(min_edges, g.edge_count());
    }
    nlohmann::json counts = nlohmann::json::array();
    for (std::size_t i = 0; i < graphs.size(); ++i) {
      const int before = graphs[i].edge_count();
      if (before > min_edges) {
        graphs[i] = downsample_edges(graphs[i], min_edges,
                                     derive_seed(options.seed, 0xd0000000u + i));
      }
      counts.push_back({{"input", graph_args.inputs[i]},
                        {"edges_before", before},
                        {"edges_after", graphs[i].edge_count()}});
      std::cerr << graph_args.inputs[i] << ": " << before << " -> "
                << graphs[i].edge_count() << " edges\n";
    }
    downsample_note = counts;
  }

  const TestResult result = permutation_test(graphs, options);
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
  std::cerr << "T = " << result.observed.statistic
            << "  p = " << result.p_value << "  (B = "
            << options.n_permutations << ", seed = " << options.seed << ")\n";

  nlohmann::json j = test_result_to_json(result);
  if (match_edge_counts) j["edge_count_matching"] = downsample_note;
  emit_json(j, out_path);
  return 0;
}

int run_simulate(SimulationSpec spec, const std::string& setting_name,
                 const std::string& r_values, const std::string& out_prefix,
                 const std::string& format) {
  spec.setting = sim_setting_from_name(setting_name);
  if (!r_values.empty()) {
    spec.r_grid.clear();
    std::stringstream ss(r_values);
    std::string token;
    while (std::getline(ss, token, ',')) {
      if (!token.empty()) spec.r_grid.push_back(std::stod(token));
    }
  }
  spec.validate();

  std::ostringstream csv;
  nlohmann::json summary;
  switch (spec.setting) {
    case SimSetting::setting1: {
      const auto report = run_setting1(spec);
      write_estimation_csv(report, csv);
      summary = estimation_summary_json(report);
      break;
    }
    case SimSetting::setting2: {
      const auto report = run_setting2(spec);
      write_estimation_csv(report, csv);
      summary = estimation_summary_json(report);
      break;
    }
    case SimSetting::null_type1: {
      const auto report = run_type1(spec);
      write_calibration_csv(report, csv);
      summary = calibration_summary_json(report);
      break;
    }
    case SimSetting::power: {
      const auto report = run_power(spec);
      write_power_csv(report, csv);
      summary = power_summary_json(report);
      break;
    }
  }

  if (out_prefix.empty()) {
    if (format == "csv") {
      std::cout << csv.str();
    } else {
      std::cout << summary.dump(2) << "\n";
    }
  } else {
    const std::string csv_path = out_prefix + ".csv";
    std::ofstream csv_file(csv_path);
    if (!csv_file) throw DataError("cannot open output file: " + csv_path);
    csv_file << csv.str();
    write_json_file(summary, out_prefix + ".json");
    std::cerr << "wrote " << csv_path << " and " << out_prefix << ".json\n";
  }
  return 0;
}

int run_metrics(const std::string& truth_path,
                const std::string& estimate_path,
                const std::string& out_path) {
  const LoadedFit truth = load_fit_file(truth_path);
  const LoadedFit estimate = load_fit_file(estimate_path);

  nlohmann::json j = {{"format", "multirdpg-metrics"},
                      {"version", 1},
                      {"truth", truth_path},
                      {"estimate", estimate_path}};
  j["subspace_distance"] =
      subspace_distance(estimate.model.u(), truth.model.u());
  if (truth.model.num_graphs() == estimate.model.num_graphs()) {
    j["adjacency_error"] = adjacency_error(truth.model, estimate.model);
  } else {
    j["adjacency_error"] = nullptr;
    j["note"] = "graph counts differ; adjacency error skipped";
  }
  emit_json(j, out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint low-rank embedding of multiple graphs on shared nodes, "
               "with a permutation test for distribution equality"};
  app.require_subcommand(1);

  auto* fit_cmd = app.add_subcommand(
      "fit", "Fit the joint embedding to one or more edge-list files");
  CommonGraphArgs fit_graphs;
  FitOptions fit_options;
  std::string fit_init = "average-spectral";
  std::string fit_out;
  fit_cmd->add_option("inputs", fit_graphs.inputs, "Edge-list files")
      ->required();
  fit_cmd->add_option("--d", fit_options.d, "Embedding rank")->required();
  fit_cmd->add_option("--seed", fit_options.seed,
                      "Seed for random-orthonormal initialization")
      ->capture_default_str();
  fit_cmd->add_flag("--one-based", fit_graphs.one_based,
                    "Treat node indices in the files as 1-based");
  fit_cmd->add_option("--out", fit_out, "Output model file (default: stdout)");
  add_fit_option_flags(fit_cmd, fit_options, fit_init);

  auto* test_cmd = app.add_subcommand(
      "test", "Permutation test that all graphs share one distribution");
  CommonGraphArgs test_graphs;
  TestOptions test_options;
  std::string test_init = "average-spectral";
  std::string test_out;
  bool match_edge_counts = false;
  test_cmd->add_option("inputs", test_graphs.inputs, "Edge-list files (>= 2)")
      ->required();
  test_cmd->add_option("--d", test_options.d, "Embedding rank")->required();
  test_cmd
      ->add_option("--permutations", test_options.n_permutations,
                   "Number of permutation replicates B")
      ->capture_default_str();
  test_cmd->add_option("--seed", test_options.seed, "Base seed")
      ->capture_default_str();
  test_cmd->add_flag("--match-edge-counts", match_edge_counts,
                     "Randomly down-sample every graph to the minimum edge "
                     "count before testing");
  test_cmd->add_flag("--add-one", test_options.add_one_convention,
                     "Count the observed statistic among the replicates "
                     "(guarantees p > 0)");
  test_cmd
      ->add_option("--threads", test_options.threads,
                   "Worker threads for permutation replicates")
      ->capture_default_str();
  test_cmd->add_flag("--one-based", test_graphs.one_based,
                     "Treat node indices in the files as 1-based");
  test_cmd->add_option("--out", test_out, "Output file (default: stdout)");
  add_fit_option_flags(test_cmd, test_options.fit_options, test_init);

  auto* sim_cmd = app.add_subcommand(
      "simulate", "Run a simulation study and emit per-replicate CSV plus a "
                  "JSON summary");
  SimulationSpec spec;
  std::string setting_name = "setting1";
  std::string r_values;
  std::string sim_out;
  std::string sim_format = "structured";
  std::string sim_init = "average-spectral";
  sim_cmd
      ->add_option("--setting", setting_name,
                   "setting1 | setting2 | null-typeI | power")
      ->capture_default_str();
  sim_cmd->add_option("--n", spec.n, "Nodes per graph")->capture_default_str();
  sim_cmd->add_option("--d", spec.d, "Embedding rank")->capture_default_str();
  sim_cmd->add_option("--K", spec.num_graphs, "Graphs per replicate")
      ->capture_default_str();
  sim_cmd
      ->add_option("--permutation", spec.permutation,
                   "Setting-2 weight ordering, 1..6")
      ->capture_default_str();
  sim_cmd->add_option("--r", r_values,
                      "Comma-separated separation values in [0,1] (power)");
  sim_cmd->add_option("--replicates", spec.replicates, "Simulated data sets")
      ->capture_default_str();
  sim_cmd
      ->add_option("--permutations", spec.permutations,
                   "Permutation replicates B inside each test")
      ->capture_default_str();
  sim_cmd->add_option("--seed", spec.seed, "Base seed")->capture_default_str();
  sim_cmd->add_option("--threads", spec.threads, "Worker threads")
      ->capture_default_str();
  sim_cmd
      ->add_option("--format", sim_format,
                   "stdout rendering when --out is absent: structured | csv")
      ->capture_default_str();
  sim_cmd->add_option("--out", sim_out,
                      "Output prefix; writes <prefix>.csv and <prefix>.json");
  add_fit_option_flags(sim_cmd, spec.fit_options, sim_init);

  auto* metrics_cmd = app.add_subcommand(
      "metrics", "Compare two fitted model files (subspace distance and "
                 "adjacency error)");
  std::string truth_path;
  std::string estimate_path;
  std::string metrics_out;
  metrics_cmd->add_option("--truth", truth_path, "Reference model file")
      ->required();
  metrics_cmd->add_option("--estimate", estimate_path, "Estimated model file")
      ->required();
  metrics_cmd->add_option("--out", metrics_out,
                          "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help and friends
    }
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*fit_cmd) return run_fit(fit_graphs, fit_options, fit_init, fit_out);
    if (*test_cmd) {
      return run_test(test_graphs, test_options, test_init, match_edge_counts,
                      test_out);
    }
    if (*sim_cmd) {
      spec.fit_options.init = init_from_name(sim_init);
      return run_simulate(spec, setting_name, r_values, sim_out, sim_format);
    }
    if (*metrics_cmd) {
      return run_metrics(truth_path, estimate_path, metrics_out);
    }
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
