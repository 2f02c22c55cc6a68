#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "vibronic/montecarlo.hpp"

namespace vibronic::cli {

enum class StateKind { cat, product };

struct StateSpec {
  StateKind kind = StateKind::cat;
  Complex beta{2.0, 0.0};
  /// Product-state file (JSON with "rho" and "sigma", each {"re": [[..]], "im": [[..]]}).
  std::string file;
};

struct TomographySpec {
  /// Number of filtered Fock states; 0 derives it from the tail rule.
  Index fock_count = 0;
  double leakage_budget = 1e-3;
  int p_max = 200;
  int k_cap = 30;
  double tail = 1e-6;
};

struct OutputSpec {
  std::string directory = "vibronic-out";
  bool json = true;
  bool csv = true;
};

struct RunConfig {
  StateSpec state;
  PhaseSpaceGrid grid;
  /// |Omega| / 2 pi in Hz; only used to report durations in seconds.
  double rabi_hz = 5e5;
  double phase = 0.0;
  double eta = 0.1;
  TomographySpec tomography;
  long trials = 1000;
  std::uint64_t master_seed = 1996;
  SamplingMode mode = SamplingMode::fast_analytic;
  TrialAllocation allocation = TrialAllocation::per_variant;
  OutputSpec output;
  /// Fock truncation; 0 sizes it from the guard band (at least 64).
  Index n_max = 0;
  unsigned threads = 0;

  /// Internal drive: |Omega| = 1, so times are in units of 1/|Omega|.
  DriveConfig drive() const;
  SamplerConfig sampler() const;
  ScheduleOptions schedule_options() const;
  /// Throws ErrorCode::config_parse describing the first bad field.
  void validate() const;
};

/// Rejects unknown keys at every level.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);
nlohmann::json to_json(const RunConfig& config);

/// FNV-1a over the canonical JSON of everything except output and threads.
std::string config_hash(const RunConfig& config);

/// "re_min,re_max,n_re,im_min,im_max,n_im"
PhaseSpaceGrid parse_grid(const std::string& text);
/// "re" or "re,im"
Complex parse_complex(const std::string& text);
SamplingMode parse_mode(const std::string& text);
const char* to_string(SamplingMode mode) noexcept;
const char* to_string(TrialAllocation allocation) noexcept;

struct PreparedState {
  VibronicDensity state;
  /// |beta| for cats, sqrt(<n>) otherwise.
  double amplitude = 0.0;
};

/// Builds the configured state with the resolved truncation.
PreparedState prepare_state(const RunConfig& config);
Index resolve_dimension(const RunConfig& config, double state_amplitude);

}  // namespace vibronic::cli
