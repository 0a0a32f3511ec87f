#ifndef MULTIRDPG_SERIALIZE_HPP
#define MULTIRDPG_SERIALIZE_HPP

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "multirdpg/fit.hpp"
#include "multirdpg/inference.hpp"
#include "multirdpg/simulation.hpp"

namespace multirdpg {

// Self-describing versioned records. Readers reject unknown formats and
// newer major versions.
inline constexpr int kFitFormatVersion = 1;
inline constexpr int kTestFormatVersion = 1;
inline constexpr int kReportFormatVersion = 1;

nlohmann::json fit_to_json(const MultiRdpgFit& fit, const FitOptions& options);

struct LoadedFit {
  LatentModel model;
  std::vector<double> objective_trace;
  bool converged = false;
  int iterations = 0;
};

LoadedFit fit_from_json(const nlohmann::json& j);
LoadedFit load_fit_file(const std::string& path);

nlohmann::json test_result_to_json(const TestResult& result);

nlohmann::json fit_options_to_json(const FitOptions& options);
FitOptions fit_options_from_json(const nlohmann::json& j);

nlohmann::json spec_to_json(const SimulationSpec& spec);

// Per-replicate CSV tables plus JSON summaries for the simulation reports.
void write_estimation_csv(const EstimationReport& report, std::ostream& out);
nlohmann::json estimation_summary_json(const EstimationReport& report);

void write_calibration_csv(const CalibrationReport& report, std::ostream& out);
nlohmann::json calibration_summary_json(const CalibrationReport& report);

void write_power_csv(const PowerReport& report, std::ostream& out);
nlohmann::json power_summary_json(const PowerReport& report);

void write_json_file(const nlohmann::json& j, const std::string& path);

}  // namespace multirdpg

#endif  // MULTIRDPG_SERIALIZE_HPP
