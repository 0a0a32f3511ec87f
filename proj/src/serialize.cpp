#include "multirdpg/serialize.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "multirdpg/errors.hpp"

namespace multirdpg {

namespace {

void check_format(const nlohmann::json& j, const std::string& expected,
                  int max_version) {
  if (!j.contains("format") || j.at("format").get<std::string>() != expected) {
    throw DataError("expected a '" + expected + "' file");
  }
  const int version = j.value("version", 0);
  if (version < 1 || version > max_version) {
    throw DataError("unsupported " + expected + " version " +
                    std::to_string(version));
  }
}

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
  // Row-major flat list; dimensions travel alongside.
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) rows.push_back(m(i, j));
  return rows;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j, int rows, int cols) {
  if (static_cast<int>(j.size()) != rows * cols) {
    throw DataError("matrix payload has wrong length");
  }
  Eigen::MatrixXd m(rows, cols);
  int idx = 0;
  for (int i = 0; i < rows; ++i)
    for (int c = 0; c < cols; ++c) m(i, c) = j.at(idx++).get<double>();
  return m;
}

// Full round-trip precision for CSV cells.
std::string fmt(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

}  // namespace

nlohmann::json fit_options_to_json(const FitOptions& options) {
  return {{"d", options.d},
          {"max_iterations", options.max_iterations},
          {"tolerance", options.tolerance},
          {"init", init_name(options.init)},
          {"seed", options.seed}};
}

FitOptions fit_options_from_json(const nlohmann::json& j) {
  FitOptions options;
  options.d = j.value("d", 1);
  options.max_iterations = j.value("max_iterations", 1000);
  options.tolerance = j.value("tolerance", 1e-8);
  options.init = init_from_name(j.value("init", std::string("average-spectral")));
  options.seed = j.value("seed", std::uint64_t{0});
  return options;
}

nlohmann::json fit_to_json(const MultiRdpgFit& fit, const FitOptions& options) {
  const LatentModel& model = fit.model;
  nlohmann::json lambdas = nlohmann::json::array();
  for (const auto& lambda : model.lambdas()) {
    nlohmann::json one = nlohmann::json::array();
    for (Eigen::Index i = 0; i < lambda.size(); ++i) one.push_back(lambda(i));
    lambdas.push_back(one);
  }
  return {{"format", "multirdpg-fit"},
          {"version", kFitFormatVersion},
          {"n", model.n()},
          {"d", model.d()},
          {"K", model.num_graphs()},
          {"u_row_major", matrix_to_json(model.u())},
          {"lambdas", lambdas},
          {"link", link_name(model.link())},
          {"objective_trace", fit.objective_trace},
          {"objective", fit.objective()},
          {"converged", fit.converged},
          {"iterations", fit.iterations},
          {"options", fit_options_to_json(options)}};
}

LoadedFit fit_from_json(const nlohmann::json& j) {
  check_format(j, "multirdpg-fit", kFitFormatVersion);
  const int n = j.at("n").get<int>();
  const int d = j.at("d").get<int>();
  const int num_graphs = j.at("K").get<int>();
  Eigen::MatrixXd u = matrix_from_json(j.at("u_row_major"), n, d);
  std::vector<Eigen::VectorXd> lambdas;
  lambdas.reserve(static_cast<std::size_t>(num_graphs));
  for (const auto& one : j.at("lambdas")) {
    Eigen::VectorXd lambda(d);
    if (static_cast<int>(one.size()) != d) {
      throw DataError("lambda vector has wrong length");
    }
    for (int i = 0; i < d; ++i) lambda(i) = one.at(i).get<double>();
    lambdas.push_back(std::move(lambda));
  }
  if (static_cast<int>(lambdas.size()) != num_graphs) {
    throw DataError("lambda count does not match K");
  }
  const Link link = link_from_name(j.value("link", std::string("identity")));
  LoadedFit loaded{LatentModel(std::move(u), std::move(lambdas), link),
                   j.value("objective_trace", std::vector<double>{}),
                   j.value("converged", false), j.value("iterations", 0)};
  return loaded;
}

LoadedFit load_fit_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open model file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("cannot parse model file " + path + ": " + e.what());
  }
  return fit_from_json(j);
}

nlohmann::json test_result_to_json(const TestResult& result) {
  return {{"format", "multirdpg-test"},
          {"version", kTestFormatVersion},
          {"statistic", result.observed.statistic},
          {"null_objective", result.observed.null_objective},
          {"alternative_objective", result.observed.alternative_objective},
          {"p_value", result.p_value},
          {"null_statistics", result.null_statistics},
          {"options",
           {{"d", result.options.d},
            {"n_permutations", result.options.n_permutations},
            {"seed", result.options.seed},
            {"add_one_convention", result.options.add_one_convention},
            {"fit_options", fit_options_to_json(result.options.fit_options)}}},
          {"warnings", result.warnings}};
}

nlohmann::json spec_to_json(const SimulationSpec& spec) {
  nlohmann::json j = {{"setting", sim_setting_name(spec.setting)},
                      {"n", spec.n},
                      {"d", spec.d},
                      {"K", spec.num_graphs},
                      {"replicates", spec.replicates},
                      {"seed", spec.seed},
                      {"threads", spec.threads},
                      {"fit_options", fit_options_to_json(spec.fit_options)}};
  if (spec.setting == SimSetting::setting2) {
    j["permutation"] = spec.permutation;
  }
  if (spec.setting == SimSetting::null_type1 ||
      spec.setting == SimSetting::power) {
    j["permutations"] = spec.permutations;
  }
  if (spec.setting == SimSetting::power) {
    j["r_grid"] = spec.r_grid;
  }
  return j;
}

void write_estimation_csv(const EstimationReport& report, std::ostream& out) {
  out << "replicate,estimator,subspace_distance,adjacency_error\n";
  for (std::size_t rep = 0;
       rep < report.estimators.front().subspace.size(); ++rep) {
    for (const auto& est : report.estimators) {
      out << rep << "," << est.name << "," << fmt(est.subspace[rep]) << ","
          << fmt(est.adjacency[rep]) << "\n";
    }
  }
}

nlohmann::json estimation_summary_json(const EstimationReport& report) {
  nlohmann::json estimators = nlohmann::json::object();
  for (const auto& est : report.estimators) {
    const SummaryStat du = summarize(est.subspace);
    const SummaryStat da = summarize(est.adjacency);
    estimators[est.name] = {
        {"subspace_distance", {{"mean", du.mean}, {"std_error", du.std_error}}},
        {"adjacency_error", {{"mean", da.mean}, {"std_error", da.std_error}}}};
  }
  return {{"format", "multirdpg-report"},
          {"version", kReportFormatVersion},
          {"spec", spec_to_json(report.spec)},
          {"estimators", estimators}};
}

void write_calibration_csv(const CalibrationReport& report,
                           std::ostream& out) {
  out << "replicate,p_value,statistic\n";
  for (std::size_t rep = 0; rep < report.p_values.size(); ++rep) {
    out << rep << "," << fmt(report.p_values[rep]) << ","
        << fmt(report.statistics[rep]) << "\n";
  }
}

nlohmann::json calibration_summary_json(const CalibrationReport& report) {
  int rejections = 0;
  for (double p : report.p_values) {
    if (p < kPowerAlpha) ++rejections;
  }
  return {{"format", "multirdpg-report"},
          {"version", kReportFormatVersion},
          {"spec", spec_to_json(report.spec)},
          {"rejection_rate",
           static_cast<double>(rejections) /
               static_cast<double>(report.p_values.size())},
          {"alpha", kPowerAlpha}};
}

void write_power_csv(const PowerReport& report, std::ostream& out) {
  out << "r,replicate,p_value,statistic\n";
  for (std::size_t ri = 0; ri < report.r_grid.size(); ++ri) {
    for (std::size_t rep = 0; rep < report.p_values[ri].size(); ++rep) {
      out << fmt(report.r_grid[ri]) << "," << rep << ","
          << fmt(report.p_values[ri][rep]) << ","
          << fmt(report.statistics[ri][rep]) << "\n";
    }
  }
}

nlohmann::json power_summary_json(const PowerReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t ri = 0; ri < report.r_grid.size(); ++ri) {
    rows.push_back({{"r", report.r_grid[ri]}, {"power", report.power[ri]}});
  }
  return {{"format", "multirdpg-report"},
          {"version", kReportFormatVersion},
          {"spec", spec_to_json(report.spec)},
          {"alpha", kPowerAlpha},
          {"power", rows}};
}

void write_json_file(const nlohmann::json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open output file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace multirdpg
