#include "vibronic/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace vibronic {
namespace {

std::vector<double> rabi_ratios(const DriveConfig& drive, Index target_m, Index n_stat) {
  const double target = rabi_frequency(drive, target_m);
  std::vector<double> ratio(static_cast<std::size_t>(n_stat));
  for (Index n = 0; n < n_stat; ++n) {
    ratio[static_cast<std::size_t>(n)] = n == target_m ? 1.0 : rabi_frequency(drive, n) / target;
  }
  return ratio;
}

double cos_squared(double x) {
  const double c = std::cos(x);
  return c * c;
}

}  // namespace

const char* to_string(Tau1Variant variant) noexcept {
  switch (variant) {
    case Tau1Variant::zero: return "tau1_zero";
    case Tau1Variant::pi: return "tau1_pi";
    case Tau1Variant::half_pi: return "tau1_half_pi";
  }
  return "unknown";
}

void require_no_rabi_null(const DriveConfig& drive, Index m) {
  const double lm = laguerre(m, drive.lamb_dicke * drive.lamb_dicke);
  if (std::abs(lm) < kRabiNullThreshold) {
    throw Error(ErrorCode::rabi_null, "vibronic Rabi frequency of Fock state " +
                                          std::to_string(m) + " vanishes (L_m = " +
                                          std::to_string(lm) + ")");
  }
}

double first_pulse_duration(const DriveConfig& drive, Index m, Tau1Variant variant) {
  if (variant == Tau1Variant::zero) return 0.0;
  require_no_rabi_null(drive, m);
  const double period = kPi / std::abs(rabi_frequency(drive, m));
  return variant == Tau1Variant::pi ? period : 0.5 * period;
}

std::vector<double> suppression_factors(const DriveConfig& drive, const CycleSchedule& schedule,
                                        Index n_stat) {
  require_no_rabi_null(drive, schedule.target_m);
  const std::vector<double> ratio = rabi_ratios(drive, schedule.target_m, n_stat);
  std::vector<double> s(ratio.size(), 1.0);
  for (std::size_t n = 0; n < s.size(); ++n) {
    if (static_cast<Index>(n) == schedule.target_m) continue;
    for (const int p : schedule.multipliers) s[n] *= cos_squared(kPi * p * ratio[n]);
  }
  return s;
}

CycleSchedule greedy_schedule(const DriveConfig& drive, Index target_m, Index n_stat,
                              const ScheduleOptions& options) {
  drive.validate();
  if (n_stat < 1 || target_m < 0 || target_m >= n_stat) {
    throw Error(ErrorCode::invalid_argument, "target Fock state " + std::to_string(target_m) +
                                                 " outside [0, " + std::to_string(n_stat) + ")");
  }
  if (!(options.leakage_budget > 0.0 && options.leakage_budget < 1.0)) {
    throw Error(ErrorCode::invalid_argument, "leakage budget must lie in (0, 1)");
  }
  if (options.p_max < 1 || options.k_cap < 1) {
    throw Error(ErrorCode::invalid_argument, "p_max and k_cap must be >= 1");
  }
  require_no_rabi_null(drive, target_m);

  const std::vector<double> ratio = rabi_ratios(drive, target_m, n_stat);
  std::vector<double> surviving(ratio.size(), 1.0);
  auto worst_of = [&](const std::vector<double>& s) {
    double worst = 0.0;
    for (std::size_t n = 0; n < s.size(); ++n)
      if (static_cast<Index>(n) != target_m) worst = std::max(worst, s[n]);
    return worst;
  };

  CycleSchedule schedule;
  schedule.target_m = target_m;
  schedule.n_stat = n_stat;
  double worst = worst_of(surviving);
  while (worst > options.leakage_budget && schedule.cycles() < options.k_cap) {
    int best_p = 1;
    double best_worst = std::numeric_limits<double>::infinity();
    for (int p = 1; p <= options.p_max; ++p) {
      double candidate = 0.0;
      for (std::size_t n = 0; n < ratio.size(); ++n) {
        if (static_cast<Index>(n) == target_m) continue;
        candidate = std::max(candidate, surviving[n] * cos_squared(kPi * p * ratio[n]));
        if (candidate >= best_worst) break;
      }
      if (candidate < best_worst) {
        best_worst = candidate;
        best_p = p;
      }
    }
    schedule.multipliers.push_back(best_p);
    for (std::size_t n = 0; n < ratio.size(); ++n) {
      if (static_cast<Index>(n) != target_m) surviving[n] *= cos_squared(kPi * best_p * ratio[n]);
    }
    worst = worst_of(surviving);
  }

  const double period = 2.0 * kPi / std::abs(rabi_frequency(drive, target_m));
  for (const int p : schedule.multipliers) schedule.taus.push_back(period * p);
  schedule.leakage = worst;
  schedule.feasible = worst <= options.leakage_budget;
  return schedule;
}

CycleSchedule build_schedule(const DriveConfig& drive, Index target_m, Index n_stat,
                             const ScheduleOptions& options) {
  CycleSchedule schedule = greedy_schedule(drive, target_m, n_stat, options);
  if (!schedule.feasible) {
    throw Error(ErrorCode::schedule_infeasible,
                "Fock state " + std::to_string(target_m) + ": best leakage " +
                    std::to_string(schedule.leakage) + " after " +
                    std::to_string(schedule.cycles()) + " cycles exceeds budget " +
                    std::to_string(options.leakage_budget));
  }
  return schedule;
}

CycleSchedule with_first_pulse(const CycleSchedule& schedule, const DriveConfig& drive,
                               ProbeSetting setting) {
  CycleSchedule out = schedule;
  out.variant = setting.variant;
  out.phase = setting.phase;
  out.tau1 = first_pulse_duration(drive, schedule.target_m, setting.variant);
  return out;
}

DriveConfig drive_for(const DriveConfig& drive, const CycleSchedule& schedule) {
  DriveConfig d = drive;
  d.phase = schedule.phase;
  return d;
}

double exact_success_probability(const NumberStatistics& stats, const DriveConfig& drive,
                                 const CycleSchedule& schedule) {
  const DriveConfig d = drive_for(drive, schedule);
  const std::vector<double> first = reduced_after_first_cycle(stats, d, schedule.tau1);
  const std::vector<double> filtered = cycle_product(first, d, schedule.taus);
  return success_probability(filtered);
}

double exact_success_probability(const VibronicDensity& state, Complex alpha,
                                 const DriveConfig& drive, const CycleSchedule& schedule) {
  const NumberStatistics stats =
      displaced_number_statistics(state, alpha, state.dimension());
  return exact_success_probability(stats, drive, schedule);
}

NumberEstimate invert_statistics(double p_zero, double p_pi, double p_half_phi0,
                                 double p_half_phineg, double coherence_sign) {
  NumberEstimate e;
  e.rho22 = p_zero;
  e.rho11 = p_pi;
  const double mean = 0.5 * (p_zero + p_pi);
  e.im12 = coherence_sign * (p_half_phi0 - mean);
  e.re12 = coherence_sign * (p_half_phineg - mean);
  for (const double p : {p_zero, p_pi, p_half_phi0, p_half_phineg}) {
    if (p < 0.0 || p > 1.0) e.slack_violation = true;
  }
  return e;
}

WignerSample assemble_wigner(std::span<const EstimationRecord> records) {
  if (records.empty()) {
    throw Error(ErrorCode::insufficient_coverage, "no records to assemble");
  }
  const Index count = static_cast<Index>(records.size());
  std::vector<const EstimationRecord*> by_m(records.size(), nullptr);
  for (const auto& r : records) {
    if (r.m < 0 || r.m >= count || by_m[static_cast<std::size_t>(r.m)] != nullptr) {
      throw Error(ErrorCode::insufficient_coverage,
                  "records must cover m = 0.." + std::to_string(count - 1) + " exactly once");
    }
    if (r.alpha != records.front().alpha) {
      throw Error(ErrorCode::invalid_argument, "records belong to different phase-space points");
    }
    by_m[static_cast<std::size_t>(r.m)] = &r;
  }

  double w11 = 0.0, w22 = 0.0, re12 = 0.0, im12 = 0.0;
  double v11 = 0.0, v22 = 0.0, vre = 0.0, vim = 0.0;
  double leakage = 0.0;
  for (std::size_t m = 0; m < by_m.size(); ++m) {
    const EstimationRecord& r = *by_m[m];
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    w11 += sign * r.rho11;
    w22 += sign * r.rho22;
    re12 += sign * r.re12;
    im12 += sign * r.im12;
    v11 += r.se_rho11 * r.se_rho11;
    v22 += r.se_rho22 * r.se_rho22;
    vre += r.se_re12 * r.se_re12;
    vim += r.se_im12 * r.se_im12;
    // The coherence combines three probabilities: bias up to 2x the per-probability bound.
    leakage += 2.0 * r.leakage;
  }

  WignerSample s;
  s.alpha = records.front().alpha;
  s.w(0, 0) = kWignerPrefactor * w11;
  s.w(1, 1) = kWignerPrefactor * w22;
  s.w(0, 1) = kWignerPrefactor * Complex(re12, im12);
  s.w(1, 0) = std::conj(s.w(0, 1));
  s.stderr = WignerStderr{kWignerPrefactor * std::sqrt(v11), kWignerPrefactor * std::sqrt(v22),
                          kWignerPrefactor * std::sqrt(vre), kWignerPrefactor * std::sqrt(vim)};
  s.leakage_bound = kWignerPrefactor * leakage;
  return s;
}

}  // namespace vibronic
