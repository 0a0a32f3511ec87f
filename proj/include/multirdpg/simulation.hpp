#ifndef MULTIRDPG_SIMULATION_HPP
#define MULTIRDPG_SIMULATION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "multirdpg/fit.hpp"
#include "multirdpg/latent_model.hpp"

namespace multirdpg {

enum class SimSetting { setting1, setting2, null_type1, power };

std::string sim_setting_name(SimSetting setting);
SimSetting sim_setting_from_name(const std::string& name);

// Generative configuration for one study. Per-setting constraints:
//   setting1    d=3, n divisible by 4; weights drawn Uniform(8,15),
//               Uniform(1,4), Uniform(0,1); identity link.
//   setting2    d=3, n divisible by 4, K>=2; even graphs use diag(11.5,2,0.5),
//               odd graphs one of six permutations of it; clamp01 link.
//   null_type1  K=2 equal-weight pairs; d=2 uses diag(n/4,n/5), d=3 uses
//               diag(n/2,n/4,n/400); identity link.
//   power       K=2; d=2 splits n/4*(1+-r); d=3 splits (n/4,n/5,n/400)
//               by (1-+r); relu link.
struct SimulationSpec {
  SimSetting setting = SimSetting::setting1;
  int n = 20;
  int d = 3;
  int num_graphs = 2;          // K
  int permutation = 1;         // setting2 only, 1..6
  std::vector<double> r_grid;  // power only, values in [0,1]
  int replicates = 100;
  int permutations = 1000;     // B for the tests inside null_type1/power
  std::uint64_t seed = 0;
  int threads = 1;
  FitOptions fit_options;      // tolerance / max-iterations (d comes from d)

  void validate() const;
};

struct SummaryStat {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(replicates)
};

SummaryStat summarize(const std::vector<double>& values);

struct EstimatorMetrics {
  std::string name;
  std::vector<double> subspace;   // one entry per replicate
  std::vector<double> adjacency;  // one entry per replicate
};

struct EstimationReport {
  SimulationSpec spec;
  std::vector<EstimatorMetrics> estimators;
};

struct CalibrationReport {
  SimulationSpec spec;
  std::vector<double> p_values;    // one per replicate
  std::vector<double> statistics;  // observed T per replicate
};

struct PowerReport {
  SimulationSpec spec;
  std::vector<double> r_grid;
  std::vector<std::vector<double>> p_values;    // [r index][replicate]
  std::vector<std::vector<double>> statistics;  // [r index][replicate]
  std::vector<double> power;                    // P(p < 0.05) per r
};

// The six orderings of (11.5, 2, 0.5) used for the odd-numbered graphs in
// setting 2, indexed 1..6.
Eigen::VectorXd setting2_odd_lambda(int permutation);

// Estimation studies: fits the joint model, a single pooled fit, and
// separate fits, and reports subspace distance and adjacency error per
// replicate for each estimator.
EstimationReport run_setting1(const SimulationSpec& spec);
EstimationReport run_setting2(const SimulationSpec& spec);

// Test calibration under the null; one p-value per simulated pair.
CalibrationReport run_type1(const SimulationSpec& spec);

// Power against the r-indexed alternatives, at level 0.05.
PowerReport run_power(const SimulationSpec& spec);

constexpr double kPowerAlpha = 0.05;

}  // namespace multirdpg

#endif  // MULTIRDPG_SIMULATION_HPP
