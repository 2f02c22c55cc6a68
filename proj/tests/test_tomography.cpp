#include "vibronic/tomography.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "oracles.hpp"

using namespace vibronic;

namespace {

// Independent recomputation of prod_q cos^2(Omega_n tau_q / 2) from the signed
// spectrum and the physical durations.
double suppression_from_durations(const DriveConfig& d, const CycleSchedule& s, Index n) {
  const double omega = d.rabi_magnitude * std::exp(-0.5 * d.lamb_dicke * d.lamb_dicke) *
                       boost::math::laguerre(static_cast<unsigned>(n), d.lamb_dicke * d.lamb_dicke);
  double product = 1.0;
  for (const double tau : s.taus) product *= std::pow(std::cos(0.5 * omega * tau), 2);
  return product;
}

}  // namespace

TEST(Tomography, SuppressionFactorExamples) {
  DriveConfig d;
  CycleSchedule one;
  one.target_m = 2;
  one.multipliers = {1};
  EXPECT_EQ(suppression_factors(d, one, 10)[2], 1.0);

  CycleSchedule fifty;
  fifty.target_m = 0;
  fifty.multipliers = {50};
  // Omega_1 / Omega_0 = L_1(0.01) = 0.99, so the argument is 49.5 pi.
  EXPECT_LT(suppression_factors(d, fifty, 2)[1], 1e-20);

  DriveConfig flat;
  flat.lamb_dicke = 0.0;
  fifty.multipliers = {50, 7, 3};
  for (const double s : suppression_factors(flat, fifty, 12)) EXPECT_NEAR(s, 1.0, 1e-24);
}

TEST(Tomography, FirstPulseDurations) {
  DriveConfig d;
  d.lamb_dicke = 0.3;
  const double omega = std::abs(rabi_frequency(d, 5));
  EXPECT_EQ(first_pulse_duration(d, 5, Tau1Variant::zero), 0.0);
  EXPECT_DOUBLE_EQ(first_pulse_duration(d, 5, Tau1Variant::pi), kPi / omega);
  EXPECT_DOUBLE_EQ(first_pulse_duration(d, 5, Tau1Variant::half_pi), 0.5 * kPi / omega);
}

TEST(Tomography, RabiNullIsRejected) {
  // L_1(x) = 1 - x vanishes at eta = 1.
  DriveConfig d;
  d.lamb_dicke = 1.0;
  try {
    greedy_schedule(d, 1, 8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::rabi_null);
    EXPECT_NE(std::string(e.what()).find("Fock state 1"), std::string::npos);
  }
  EXPECT_THROW(first_pulse_duration(d, 1, Tau1Variant::pi), Error);
}

TEST(Tomography, GreedyScheduleExamples) {
  DriveConfig d;
  const CycleSchedule s = build_schedule(d, 0, 20);
  EXPECT_TRUE(s.feasible);
  EXPECT_LE(s.cycles(), 30);
  EXPECT_LE(s.leakage, 1e-3);

  const CycleSchedule trivial = build_schedule(d, 0, 1);
  EXPECT_EQ(trivial.cycles(), 1);
  EXPECT_TRUE(trivial.multipliers.empty());

  DriveConfig flat;
  flat.lamb_dicke = 0.0;
  try {
    build_schedule(flat, 0, 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::schedule_infeasible);
  }
  const CycleSchedule best = greedy_schedule(flat, 0, 5);
  EXPECT_FALSE(best.feasible);
  EXPECT_EQ(best.cycles(), 60);
}

TEST(Tomography, ScheduleExactness) {
  DriveConfig d;
  for (Index m = 0; m < 20; ++m) {
    const CycleSchedule s = build_schedule(d, m, 64);
    const std::vector<double> factors = suppression_factors(d, s, 64);
    EXPECT_NEAR(factors[static_cast<std::size_t>(m)], 1.0, 1e-12);
    EXPECT_NEAR(suppression_from_durations(d, s, m), 1.0, 1e-12);
    double worst = 0.0;
    for (Index n = 0; n < 64; ++n) {
      if (n == m) continue;
      worst = std::max(worst, factors[static_cast<std::size_t>(n)]);
      EXPECT_NEAR(factors[static_cast<std::size_t>(n)], suppression_from_durations(d, s, n), 1e-12);
    }
    EXPECT_EQ(worst, s.leakage);
    for (std::size_t q = 0; q < s.taus.size(); ++q)
      EXPECT_DOUBLE_EQ(s.taus[q], 2.0 * kPi * s.multipliers[q] / std::abs(rabi_frequency(d, m)));
  }
}

TEST(Tomography, GreedyPicksSmallestMinimisingMultiplier) {
  DriveConfig d;
  const CycleSchedule s = greedy_schedule(d, 2, 6, {1e-3, 200, 2});
  ASSERT_EQ(s.multipliers.size(), 1u);
  const double target = rabi_frequency(d, 2);
  double best = 2.0;
  int best_p = 0;
  for (int p = 1; p <= 200; ++p) {
    double worst = 0.0;
    for (Index n = 0; n < 6; ++n)
      if (n != 2) {
        const double ratio = rabi_frequency(d, n) / target;
        worst = std::max(worst, std::pow(std::cos(kPi * p * ratio), 2));
      }
    if (worst < best) {
      best = worst;
      best_p = p;
    }
  }
  EXPECT_EQ(s.multipliers[0], best_p);
}

TEST(Tomography, InvertStatisticsExamples) {
  const NumberEstimate sym = invert_statistics(0.5, 0.5, 0.5, 0.5);
  EXPECT_EQ(sym.rho11, 0.5);
  EXPECT_EQ(sym.rho22, 0.5);
  EXPECT_EQ(sym.re12, 0.0);
  EXPECT_EQ(sym.im12, 0.0);
  EXPECT_FALSE(sym.slack_violation);

  const NumberEstimate pure = invert_statistics(1.0, 0.0, 0.5, 0.5);
  EXPECT_EQ(pure.rho22, 1.0);
  EXPECT_EQ(pure.rho11, 0.0);
  EXPECT_EQ(pure.re12, 0.0);
  EXPECT_EQ(pure.im12, 0.0);

  EXPECT_TRUE(invert_statistics(1.02, 0.0, 0.5, 0.5).slack_violation);
  EXPECT_NEAR(invert_statistics(0.2, 0.4, 0.5, 0.1, -1.0).im12, -0.2, 1e-15);
}

TEST(Tomography, ExactProbabilitiesSelectTargetStatistics) {
  const VibronicDensity cat = make_cat_state(2.0, 64);
  const DriveConfig d;
  const Complex alpha(0.4, -0.3);
  const NumberStatistics stats = displaced_number_statistics(cat, alpha, 64);
  for (Index m = 0; m < 12; ++m) {
    const CycleSchedule filter = build_schedule(d, m, 64);
    const double p0 = exact_success_probability(
        cat, alpha, d, with_first_pulse(filter, d, kProbeSettings[0]));
    const double ppi = exact_success_probability(
        cat, alpha, d, with_first_pulse(filter, d, kProbeSettings[1]));
    EXPECT_NEAR(p0, stats.values[static_cast<std::size_t>(m)](1, 1).real(), filter.leakage);
    EXPECT_NEAR(ppi, stats.values[static_cast<std::size_t>(m)](0, 0).real(), filter.leakage);
  }
}

TEST(Tomography, ExactModeIdentity) {
  const DriveConfig d;
  const PhaseSpaceGrid grid;
  const VibronicDensity cat = make_cat_state(2.0, 82);
  std::vector<CycleSchedule> filters;
  for (Index m = 0; m < 16; ++m) filters.push_back(build_schedule(d, m, 82));

  auto estimate = [&](const NumberStatistics& stats, const CycleSchedule& filter) {
    std::array<double, 4> p{};
    for (std::size_t s = 0; s < 4; ++s)
      p[s] = exact_success_probability(stats, d, with_first_pulse(filter, d, kProbeSettings[s]));
    return invert_statistics(p[0], p[1], p[2], p[3], 1.0);
  };

  // Spot value at the origin, m = 4.
  {
    const NumberStatistics stats = displaced_number_statistics(cat, 0.0, 82);
    const NumberEstimate e = estimate(stats, filters[4]);
    const Eigen::Matrix2cd& v = stats.values[4];
    const double tol = 2.0 * filters[4].leakage;
    EXPECT_NEAR(e.rho11, v(0, 0).real(), tol);
    EXPECT_NEAR(e.rho22, v(1, 1).real(), tol);
    EXPECT_NEAR(e.re12, v(0, 1).real(), tol);
    EXPECT_NEAR(e.im12, v(0, 1).imag(), tol);
  }

  for (Index k = 0; k < grid.size(); k += 11) {
    const NumberStatistics stats = displaced_number_statistics(cat, grid.point(k), 82);
    for (Index m = 0; m < 16; ++m) {
      const NumberEstimate e = estimate(stats, filters[static_cast<std::size_t>(m)]);
      const Eigen::Matrix2cd& v = stats.values[static_cast<std::size_t>(m)];
      const double tol = 2.0 * filters[static_cast<std::size_t>(m)].leakage + 1e-12;
      EXPECT_NEAR(e.rho11, v(0, 0).real(), tol);
      EXPECT_NEAR(e.rho22, v(1, 1).real(), tol);
      EXPECT_NEAR(e.re12, v(0, 1).real(), tol);
      EXPECT_NEAR(e.im12, v(0, 1).imag(), tol);
    }
  }
}

TEST(Tomography, NegativeRabiFrequencyCoherenceSign) {
  // Large eta makes some Omega_n negative; the sign must be fed back into the inversion.
  DriveConfig d;
  d.lamb_dicke = 0.9;
  Index m = 0;
  while (rabi_frequency(d, m) > 0.0) ++m;
  ASSERT_LT(m, 10);
  std::mt19937_64 gen(127);
  const VibronicDensity s = oracle::random_state(gen, 24, 6);
  const NumberStatistics stats = displaced_number_statistics(s, 0.0, 24);
  CycleSchedule bare;
  bare.target_m = m;
  std::array<double, 4> p{};
  // No filtering cycles: read the first-cycle value of entry m directly.
  for (std::size_t k = 0; k < 4; ++k) {
    const CycleSchedule sch = with_first_pulse(bare, d, kProbeSettings[k]);
    p[k] = reduced_after_first_cycle(stats, drive_for(d, sch), sch.tau1)[static_cast<std::size_t>(m)];
  }
  const NumberEstimate e = invert_statistics(p[0], p[1], p[2], p[3], -1.0);
  EXPECT_NEAR(e.re12, stats.values[static_cast<std::size_t>(m)](0, 1).real(), 1e-12);
  EXPECT_NEAR(e.im12, stats.values[static_cast<std::size_t>(m)](0, 1).imag(), 1e-12);
}

TEST(Tomography, AssembleWigner) {
  const VibronicDensity cat = make_cat_state(Complex(1.0, 0.6), 64);
  const Complex alpha(0.2, 0.5);
  const NumberStatistics stats = displaced_number_statistics(cat, alpha, 64);
  std::vector<EstimationRecord> records;
  for (Index m = 0; m < 64; ++m) {
    const Eigen::Matrix2cd& v = stats.values[static_cast<std::size_t>(m)];
    EstimationRecord r;
    r.alpha = alpha;
    r.m = m;
    r.rho11 = v(0, 0).real();
    r.rho22 = v(1, 1).real();
    r.re12 = v(0, 1).real();
    r.im12 = v(0, 1).imag();
    r.se_rho11 = 0.01;
    r.se_rho22 = 0.02;
    records.push_back(r);
  }
  std::reverse(records.begin(), records.end());
  const WignerSample w = assemble_wigner(records);
  EXPECT_LE(linalg::max_abs(w.w - wigner_matrix_exact(cat, alpha).w), 1e-10);
  EXPECT_EQ(w.w(1, 0), std::conj(w.w(0, 1)));
  ASSERT_TRUE(w.stderr.has_value());
  EXPECT_NEAR(w.stderr->w11, 2.0 / kPi * 0.01 * 8.0, 1e-15);
  EXPECT_NEAR(w.stderr->w22, 2.0 / kPi * 0.02 * 8.0, 1e-15);

  // Flipping the odd-m records turns the alternating sum into the plain sum.
  std::vector<EstimationRecord> flipped = records;
  double plain = 0.0;
  for (auto& r : flipped) {
    plain += r.rho22;
    if (r.m % 2 == 1) r.rho22 = -r.rho22;
  }
  EXPECT_NEAR(assemble_wigner(flipped).w(1, 1).real(), 2.0 / kPi * plain, 1e-14);

  records.pop_back();  // drops m = 0
  try {
    assemble_wigner(records);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::insufficient_coverage);
  }
}

TEST(Tomography, AssembleSingleVacuumRecord) {
  EstimationRecord r;
  r.rho11 = 0.3;
  r.rho22 = 0.7;
  r.re12 = 0.1;
  r.im12 = -0.2;
  const WignerSample w = assemble_wigner(std::span<const EstimationRecord>(&r, 1));
  EXPECT_NEAR(w.w(0, 0).real(), 2.0 / kPi * 0.3, 1e-15);
  EXPECT_NEAR(w.w(1, 1).real(), 2.0 / kPi * 0.7, 1e-15);
  EXPECT_EQ(w.w(0, 1), 2.0 / kPi * Complex(0.1, -0.2));
}
