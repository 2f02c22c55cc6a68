#include "vibronic/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vibronic/parallel.hpp"

namespace vibronic {
namespace {

double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

ProbabilityEstimate from_counts(long successes, long trials) {
  ProbabilityEstimate e;
  e.successes = successes;
  e.trials = trials;
  e.p_hat = static_cast<double>(successes) / static_cast<double>(trials);
  e.stderr = std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(trials));
  return e;
}

std::size_t setting_index(const ProbeSetting& s) {
  for (std::size_t k = 0; k < kProbeSettings.size(); ++k) {
    if (kProbeSettings[k].variant == s.variant && kProbeSettings[k].phase == s.phase) return k;
  }
  return kProbeSettings.size();
}

}  // namespace

long SamplerConfig::trials_per_setting() const {
  if (allocation == TrialAllocation::per_element) return std::max(1L, (trials + 3) / 4);
  return trials;
}

void SamplerConfig::validate() const {
  if (trials < 1) throw Error(ErrorCode::invalid_argument, "trials must be >= 1");
}

TrajectoryModel::TrajectoryModel(const NumberStatistics& stats, const DriveConfig& drive,
                                 const CycleSchedule& schedule) {
  const DriveConfig d = drive_for(drive, schedule);
  std::vector<Eigen::Matrix2cd> blocks = stats.values;
  double total = 0.0;
  for (const auto& b : blocks) total += b.trace().real();

  std::vector<double> durations;
  durations.reserve(schedule.taus.size() + 1);
  durations.push_back(schedule.tau1);
  durations.insert(durations.end(), schedule.taus.begin(), schedule.taus.end());

  double norm = total;
  for (const double tau : durations) {
    if (norm <= 0.0) {
      conditional_.push_back(0.0);
      continue;
    }
    double dark = 0.0;
    for (std::size_t n = 0; n < blocks.size(); ++n) {
      const Eigen::Matrix2cd u = block_propagator(d, static_cast<Index>(n), tau);
      blocks[n] = u * blocks[n] * u.adjoint();
      dark += blocks[n](kLevel2, kLevel2).real();
    }
    conditional_.push_back(clamp_probability(dark / norm));
    // Collapse onto |2> and renormalise.
    for (auto& b : blocks) {
      const double population = dark > 0.0 ? b(kLevel2, kLevel2).real() / dark : 0.0;
      b.setZero();
      b(kLevel2, kLevel2) = population;
    }
    norm = dark > 0.0 ? 1.0 : 0.0;
  }
}

TrialOutcome TrajectoryModel::run(CounterRng& rng) const {
  for (std::size_t c = 0; c < conditional_.size(); ++c) {
    if (!rng.bernoulli(conditional_[c])) return {false, static_cast<int>(c) + 1};
  }
  return {true, std::nullopt};
}

double TrajectoryModel::success_probability() const {
  double p = 1.0;
  for (const double c : conditional_) p *= c;
  return p;
}

TrialOutcome run_trial(const VibronicDensity& state, Complex alpha, const DriveConfig& drive,
                       const CycleSchedule& schedule, CounterRng& rng) {
  const NumberStatistics stats = displaced_number_statistics(state, alpha, state.dimension());
  return TrajectoryModel(stats, drive, schedule).run(rng);
}

namespace {

ProbabilityEstimate draw_bernoulli(double p, const SamplerConfig& config, CounterRng& rng) {
  const long trials = config.trials_per_setting();
  if (config.exact_probabilities) {
    ProbabilityEstimate e;
    e.p_hat = clamp_probability(p);
    e.trials = trials;
    return e;
  }
  p = clamp_probability(p);
  long successes = 0;
  for (long t = 0; t < trials; ++t) successes += rng.bernoulli(p) ? 1 : 0;
  return from_counts(successes, trials);
}

}  // namespace

ProbabilityEstimate estimate_probability(const NumberStatistics& stats, const DriveConfig& drive,
                                         const CycleSchedule& schedule,
                                         const SamplerConfig& config, CounterRng& rng) {
  config.validate();
  if (config.exact_probabilities || config.mode == SamplingMode::fast_analytic) {
    return draw_bernoulli(exact_success_probability(stats, drive, schedule), config, rng);
  }
  const long trials = config.trials_per_setting();
  const TrajectoryModel model(stats, drive, schedule);
  long successes = 0;
  for (long t = 0; t < trials; ++t) successes += model.run(rng).success ? 1 : 0;
  return from_counts(successes, trials);
}

ProbabilityEstimate estimate_probability(const VibronicDensity& state, Complex alpha,
                                         const DriveConfig& drive, const CycleSchedule& schedule,
                                         const SamplerConfig& config, CounterRng& rng) {
  const NumberStatistics stats = displaced_number_statistics(state, alpha, state.dimension());
  return estimate_probability(stats, drive, schedule, config, rng);
}

ScheduleBank build_schedule_bank(const DriveConfig& drive, Index fock_count, Index n_stat,
                                 const ScheduleOptions& options) {
  if (fock_count < 1 || fock_count > n_stat) {
    throw Error(ErrorCode::invalid_argument, "Fock count " + std::to_string(fock_count) +
                                                 " outside [1, " + std::to_string(n_stat) + "]");
  }
  ScheduleBank bank;
  bank.n_stat = n_stat;
  bank.filters.reserve(static_cast<std::size_t>(fock_count));
  for (Index m = 0; m < fock_count; ++m) {
    bank.filters.push_back(build_schedule(drive, m, n_stat, options));
  }
  return bank;
}

Index fock_cutoff_over_grid(const VibronicDensity& state, const PhaseSpaceGrid& grid, double tail,
                            unsigned threads) {
  grid.validate();
  const DisplacementSpectrum spectrum(state.dimension());
  std::vector<Index> cutoffs(static_cast<std::size_t>(grid.size()), 0);
  parallel_for(cutoffs.size(), threads, [&](std::size_t k) {
    const NumberStatistics stats = displaced_number_statistics(
        state, grid.point(static_cast<Index>(k)), state.dimension(), spectrum);
    cutoffs[k] = statistics_cutoff(stats, tail);
  });
  return *std::max_element(cutoffs.begin(), cutoffs.end());
}

std::vector<EstimationRecord> sample_point(const NumberStatistics& stats, Index grid_index,
                                           const DriveConfig& drive, const ScheduleBank& bank,
                                           const SamplerConfig& config) {
  config.validate();
  if (stats.size() < bank.n_stat) {
    throw Error(ErrorCode::invalid_argument,
                "statistics cover fewer Fock states than the schedule bank");
  }
  const bool closed_form = config.exact_probabilities || config.mode == SamplingMode::fast_analytic;
  const std::vector<double> ones(stats.values.size(), 1.0);
  std::vector<EstimationRecord> records;
  records.reserve(bank.filters.size());
  for (const CycleSchedule& filter : bank.filters) {
    const Index m = filter.target_m;
    // The filter cycles act identically for all four first pulses.
    const std::vector<double> transmission =
        closed_form ? cycle_product(ones, drive, filter.taus) : std::vector<double>{};
    std::array<ProbabilityEstimate, kProbeSettings.size()> est;
    for (const ProbeSetting& setting : kProbeSettings) {
      const std::size_t s = setting_index(setting);
      const CycleSchedule schedule = with_first_pulse(filter, drive, setting);
      const std::uint64_t phase_index = setting.phase == 0.0 ? 0 : 1;
      CounterRng rng(stream_key(config.master_seed,
                                {static_cast<std::uint64_t>(grid_index),
                                 static_cast<std::uint64_t>(m),
                                 static_cast<std::uint64_t>(setting.variant), phase_index}));
      if (closed_form) {
        const std::vector<double> first =
            reduced_after_first_cycle(stats, drive_for(drive, schedule), schedule.tau1);
        double p = 0.0;
        for (std::size_t n = 0; n < first.size(); ++n) p += first[n] * transmission[n];
        est[s] = draw_bernoulli(p, config, rng);
      } else {
        est[s] = estimate_probability(stats, drive, schedule, config, rng);
      }
    }
    const double sign = rabi_frequency(drive, m) < 0.0 ? -1.0 : 1.0;
    const NumberEstimate e =
        invert_statistics(est[0].p_hat, est[1].p_hat, est[2].p_hat, est[3].p_hat, sign);
    const double diag_var = 0.25 * (est[0].stderr * est[0].stderr + est[1].stderr * est[1].stderr);

    EstimationRecord r;
    r.alpha = stats.alpha;
    r.m = m;
    r.rho11 = e.rho11;
    r.rho22 = e.rho22;
    r.re12 = e.re12;
    r.im12 = e.im12;
    r.se_rho22 = est[0].stderr;
    r.se_rho11 = est[1].stderr;
    r.se_im12 = std::sqrt(est[2].stderr * est[2].stderr + diag_var);
    r.se_re12 = std::sqrt(est[3].stderr * est[3].stderr + diag_var);
    r.trials = est[0].trials;
    r.leakage = filter.leakage;
    records.push_back(r);
  }
  return records;
}

std::vector<EstimationRecord> sample_point(const VibronicDensity& state, Complex alpha,
                                           Index grid_index, const DriveConfig& drive,
                                           const ScheduleBank& bank,
                                           const SamplerConfig& config) {
  const NumberStatistics stats = displaced_number_statistics(state, alpha, state.dimension());
  return sample_point(stats, grid_index, drive, bank, config);
}

SampledField sample_grid(const VibronicDensity& state, const PhaseSpaceGrid& grid,
                         const DriveConfig& drive, const ScheduleBank& bank,
                         const SamplerConfig& config) {
  grid.validate();
  config.validate();
  require_guard_band(motional_amplitude(state) + grid.max_amplitude(), state.dimension(),
                     "sample_grid");
  SampledField out;
  out.field.grid = grid;
  out.field.samples.resize(static_cast<std::size_t>(grid.size()));
  out.records.resize(static_cast<std::size_t>(grid.size()));
  const DisplacementSpectrum spectrum(state.dimension());
  const unsigned threads = config.parallel ? config.threads : 1;
  parallel_for(out.records.size(), threads, [&](std::size_t k) {
    const Index index = static_cast<Index>(k);
    const NumberStatistics stats =
        displaced_number_statistics(state, grid.point(index), state.dimension(), spectrum);
    out.records[k] = sample_point(stats, index, drive, bank, config);
    out.field.samples[k] = assemble_wigner(out.records[k]);
  });
  return out;
}

}  // namespace vibronic
