#pragma once

#include <array>
#include <iosfwd>
#include <string>

#include "vibronic/cli/config.hpp"

namespace vibronic::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitInfeasible = 2,
  kExitCompareFailed = 3,
};

struct ExactRun {
  WignerField field;
  ElectronicMarginal marginal;
  Index n_max = 0;
};

ExactRun run_exact(const RunConfig& config);

struct SampleRun {
  SampledField sampled;
  ScheduleBank bank;
  Index n_max = 0;
  Index fock_count = 0;
  double schedule_seconds = 0.0;
  double sampling_seconds = 0.0;
};

/// Throws ErrorCode::schedule_infeasible when any filter misses the budget.
SampleRun run_sample(const RunConfig& config);

std::string exact_field_json(const RunConfig& config, const ExactRun& run);
std::string sampled_field_json(const RunConfig& config, const SampleRun& run);

struct ComponentReport {
  std::string name;
  double max_abs_error = 0.0;
  double mean_abs_error = 0.0;
  double mean_stderr = 0.0;
  double within_3sigma = 0.0;
  double within_4sigma = 0.0;
  bool pass = false;
};

struct CompareReport {
  std::array<ComponentReport, 4> components;
  bool pass = false;
};

/// Pass needs, for every component, >= 95% of points within 4 stderr and a
/// mean absolute error of at most twice the mean stderr.
CompareReport compare_fields(const WignerField& exact, const WignerField& sampled);
nlohmann::json to_json(const CompareReport& report);

/// Each command writes its files and returns an ExitCode. Errors are reported
/// on `err`.
int cmd_exact(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sample(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_compare(const std::string& exact_path, const std::string& sampled_path,
                const std::string& report_path, std::ostream& out, std::ostream& err);

}  // namespace vibronic::cli
