#pragma once

#include <array>
#include <span>
#include <vector>

#include "vibronic/dynamics.hpp"
#include "vibronic/wigner.hpp"

/// Interaction-probe schedules that filter a single Fock state m, and the
/// inversion of the resulting success probabilities back to displaced
/// number statistics.
namespace vibronic {

/// Duration of the first interaction pulse relative to the target period.
enum class Tau1Variant { zero, pi, half_pi };

const char* to_string(Tau1Variant variant) noexcept;

/// First-pulse settings needed to recover rho11, rho22 and the coherence.
struct ProbeSetting {
  Tau1Variant variant;
  double phase;
};

inline constexpr std::array<ProbeSetting, 4> kProbeSettings = {{
    {Tau1Variant::zero, 0.0},
    {Tau1Variant::pi, 0.0},
    {Tau1Variant::half_pi, 0.0},
    {Tau1Variant::half_pi, -kPi / 2.0},
}};

struct ScheduleOptions {
  double leakage_budget = 1e-3;
  int p_max = 200;
  int k_cap = 60;
};

/// Cycle 1 uses tau1; cycles 2..k use tau_q = 2 pi p_q / |Omega_m|.
struct CycleSchedule {
  Index target_m = 0;
  Tau1Variant variant = Tau1Variant::zero;
  double phase = 0.0;
  std::vector<int> multipliers;
  double tau1 = 0.0;
  std::vector<double> taus;
  /// Number of Fock states the filter was designed against.
  Index n_stat = 0;
  /// max_{n != m, n < n_stat} S_n for the multipliers above.
  double leakage = 0.0;
  bool feasible = true;

  int cycles() const { return 1 + static_cast<int>(multipliers.size()); }
};

/// |L_m(eta^2)| below this threshold counts as a Rabi null.
inline constexpr double kRabiNullThreshold = 1e-6;

/// Throws ErrorCode::rabi_null if Omega_m is (numerically) zero.
void require_no_rabi_null(const DriveConfig& drive, Index m);

/// First-pulse duration for `variant` at target m: 0, pi/|Omega_m| or pi/(2|Omega_m|).
double first_pulse_duration(const DriveConfig& drive, Index m, Tau1Variant variant);

/// S_n = prod_q cos^2(pi p_q Omega_n / Omega_m) for n < n_stat; S_m = 1.
std::vector<double> suppression_factors(const DriveConfig& drive, const CycleSchedule& schedule,
                                        Index n_stat);

/// Greedy minimax: each added cycle takes the p in [1, p_max] that minimises the
/// worst surviving S_n (ties go to the smaller p). Stops at the leakage budget or
/// after k_cap cycles; `feasible` tells which. Never throws for infeasibility.
CycleSchedule greedy_schedule(const DriveConfig& drive, Index target_m, Index n_stat,
                              const ScheduleOptions& options = {});

/// As greedy_schedule but throws ErrorCode::schedule_infeasible when the budget
/// is not reached; the message carries the best leakage achieved.
CycleSchedule build_schedule(const DriveConfig& drive, Index target_m, Index n_stat,
                             const ScheduleOptions& options = {});

/// Copy of `schedule` with the first pulse set for `setting`.
CycleSchedule with_first_pulse(const CycleSchedule& schedule, const DriveConfig& drive,
                               ProbeSetting setting);

/// The drive as used by a schedule: same |Omega| and eta, schedule phase.
DriveConfig drive_for(const DriveConfig& drive, const CycleSchedule& schedule);

/// P(tau_k, ..., tau_1) from precomputed displaced statistics.
double exact_success_probability(const NumberStatistics& stats, const DriveConfig& drive,
                                 const CycleSchedule& schedule);

double exact_success_probability(const VibronicDensity& state, Complex alpha,
                                 const DriveConfig& drive, const CycleSchedule& schedule);

struct NumberEstimate {
  double rho11 = 0.0;
  double rho22 = 0.0;
  double re12 = 0.0;
  double im12 = 0.0;
  /// Inputs outside [0, 1] (allowed, only reported).
  bool slack_violation = false;
};

/// rho22 = p_zero, rho11 = p_pi,
/// im12 = p_half(phi=0) - (p_zero + p_pi)/2, re12 = p_half(phi=-pi/2) - (p_zero + p_pi)/2.
/// `coherence_sign` is the sign of Omega_m; the half-period pulse flips the
/// coherence term when the target Rabi frequency is negative.
NumberEstimate invert_statistics(double p_zero, double p_pi, double p_half_phi0,
                                 double p_half_phineg, double coherence_sign = 1.0);

struct EstimationRecord {
  Complex alpha{0.0, 0.0};
  Index m = 0;
  double rho11 = 0.0;
  double rho22 = 0.0;
  double re12 = 0.0;
  double im12 = 0.0;
  double se_rho11 = 0.0;
  double se_rho22 = 0.0;
  double se_re12 = 0.0;
  double se_im12 = 0.0;
  /// Trials per probe setting.
  long trials = 0;
  /// Bias bound on each probability from imperfect filtering.
  double leakage = 0.0;
};

/// w_ij = (2/pi) sum_m (-1)^m rho_ij^mm, stderr_ij = (2/pi) sqrt(sum_m se_m^2).
/// Records must cover m = 0..M-1 for one alpha (any order); otherwise throws
/// ErrorCode::insufficient_coverage.
WignerSample assemble_wigner(std::span<const EstimationRecord> records);

}  // namespace vibronic
