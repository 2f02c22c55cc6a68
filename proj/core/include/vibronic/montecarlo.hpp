#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "vibronic/rng.hpp"
#include "vibronic/tomography.hpp"

/// Stochastic emulation of the interaction-probe experiment.
///
/// Every (grid point, m, variant, phase) task draws from its own CounterRng
/// keyed by stream_key(master_seed, {grid_index, m, variant, phase_index}), so
/// sampled output is identical for any thread count.
namespace vibronic {

enum class SamplingMode {
  /// Each trial is a Bernoulli draw with the closed-form success probability.
  fast_analytic,
  /// Each trial walks the probe cycles on the conditioned state.
  trajectory,
};

enum class TrialAllocation {
  /// `trials` for each of the four probe settings.
  per_variant,
  /// `trials` shared by the four settings of one matrix element (ceil(trials/4) each).
  per_element,
};

struct SamplerConfig {
  long trials = 1000;
  std::uint64_t master_seed = 1996;
  SamplingMode mode = SamplingMode::fast_analytic;
  TrialAllocation allocation = TrialAllocation::per_variant;
  bool parallel = true;
  /// Worker count when parallel; 0 means all cores.
  unsigned threads = 0;
  /// Infinite-trial limit: report exact probabilities with zero stderr.
  bool exact_probabilities = false;

  long trials_per_setting() const;
  void validate() const;
};

struct TrialOutcome {
  bool success = false;
  /// 1-based cycle of the first fluorescence event; empty on success.
  std::optional<int> failure_cycle;
};

/// Conditioned-state walk for one schedule. Construction propagates the
/// motional-diagonal 2x2 blocks of the displaced state through each cycle
/// and stores the conditional no-fluorescence probability of every probe;
/// run() then draws one Bernoulli per probe until the first fluorescence.
/// Motional coherences between different n never enter: the drive conserves n
/// and the probe acts on the electronic level only.
class TrajectoryModel {
 public:
  TrajectoryModel(const NumberStatistics& stats, const DriveConfig& drive,
                  const CycleSchedule& schedule);

  TrialOutcome run(CounterRng& rng) const;

  /// Conditional no-fluorescence probability of probe c (0-based).
  const std::vector<double>& conditional_probabilities() const { return conditional_; }
  /// Product of the conditional probabilities.
  double success_probability() const;

 private:
  std::vector<double> conditional_;
};

TrialOutcome run_trial(const VibronicDensity& state, Complex alpha, const DriveConfig& drive,
                       const CycleSchedule& schedule, CounterRng& rng);

struct ProbabilityEstimate {
  double p_hat = 0.0;
  double stderr = 0.0;
  long successes = 0;
  long trials = 0;
};

/// p_hat = successes / trials, stderr = sqrt(p_hat (1 - p_hat) / trials).
ProbabilityEstimate estimate_probability(const NumberStatistics& stats, const DriveConfig& drive,
                                         const CycleSchedule& schedule,
                                         const SamplerConfig& config, CounterRng& rng);

ProbabilityEstimate estimate_probability(const VibronicDensity& state, Complex alpha,
                                         const DriveConfig& drive, const CycleSchedule& schedule,
                                         const SamplerConfig& config, CounterRng& rng);

/// Fock filters for m = 0..M-1, each designed against all n < n_stat.
struct ScheduleBank {
  std::vector<CycleSchedule> filters;
  Index n_stat = 0;

  Index size() const { return static_cast<Index>(filters.size()); }
};

/// Throws ErrorCode::schedule_infeasible naming the first m that misses the budget.
ScheduleBank build_schedule_bank(const DriveConfig& drive, Index fock_count, Index n_stat,
                                 const ScheduleOptions& options);

/// Largest statistics_cutoff over the grid: the number M of Fock states whose
/// displaced occupation must be measured so the neglected tail stays below `tail`.
Index fock_cutoff_over_grid(const VibronicDensity& state, const PhaseSpaceGrid& grid,
                            double tail = 1e-6, unsigned threads = 1);

/// Four probe settings per m, inverted to one EstimationRecord per m.
/// `stats` must cover the whole truncated space.
std::vector<EstimationRecord> sample_point(const NumberStatistics& stats, Index grid_index,
                                           const DriveConfig& drive, const ScheduleBank& bank,
                                           const SamplerConfig& config);

std::vector<EstimationRecord> sample_point(const VibronicDensity& state, Complex alpha,
                                           Index grid_index, const DriveConfig& drive,
                                           const ScheduleBank& bank,
                                           const SamplerConfig& config);

struct SampledField {
  WignerField field;
  /// records[k] holds the per-m estimates behind field.samples[k].
  std::vector<std::vector<EstimationRecord>> records;
};

SampledField sample_grid(const VibronicDensity& state, const PhaseSpaceGrid& grid,
                         const DriveConfig& drive, const ScheduleBank& bank,
                         const SamplerConfig& config);

}  // namespace vibronic
