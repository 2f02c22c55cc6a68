#include "vibronic/state.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "vibronic/wigner.hpp"

using namespace vibronic;

namespace {

FockOperator vacuum_projector(Index n_max) {
  const FockVector v = fock_state(0, n_max);
  return v * v.adjoint();
}

ElectronicDensity random_sigma(std::mt19937_64& gen) {
  const Eigen::Vector2cd a = oracle::random_unit2(gen);
  const Eigen::Vector2cd b = oracle::random_unit2(gen);
  return 0.7 * a * a.adjoint() + 0.3 * b * b.adjoint();
}

}  // namespace

TEST(State, CatAtBetaZero) {
  const VibronicDensity cat = make_cat_state(0.0, 16);
  EXPECT_NEAR(cat.block(kLevel2, kLevel2).trace().real(), 0.5, 1e-15);
  EXPECT_NEAR(cat.block(kLevel1, kLevel1)(0, 0).real(), 0.5, 1e-15);
  EXPECT_NEAR(cat.block(kLevel2, kLevel1)(0, 0).real(), -0.5, 1e-15);
  EXPECT_NEAR(cat.block(kLevel1, kLevel1).block(1, 1, 15, 15).norm(), 0.0, 1e-15);
}

TEST(State, CatAtBetaTwo) {
  const VibronicDensity cat = make_cat_state(2.0, 64);
  validate(cat);
  const Complex tr21 = cat.block(kLevel2, kLevel1).trace();
  EXPECT_NEAR(tr21.real(), -1.6773131395125593e-4, 1e-15);  // -e^{-8}/2
  EXPECT_NEAR(tr21.imag(), 0.0, 1e-16);
  const Eigen::MatrixXcd full = cat.assembled();
  EXPECT_NEAR((full * full).trace().real(), 1.0, 1e-10);

  const FockVector plus = oracle::coherent(2.0, 64), minus = oracle::coherent(-2.0, 64);
  EXPECT_LE(linalg::max_abs(cat.block(kLevel2, kLevel2) - 0.5 * plus * plus.adjoint()), 1e-13);
  EXPECT_LE(linalg::max_abs(cat.block(kLevel2, kLevel1) + 0.5 * plus * minus.adjoint()), 1e-13);
}

TEST(State, CatRejectsUnsafeTruncation) {
  try {
    make_cat_state(5.5, 64);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::truncation_unsafe);
  }
}

TEST(State, ProductStateMarginals) {
  ElectronicDensity sigma = ElectronicDensity::Zero();
  sigma(0, 0) = 1.0;
  const VibronicDensity s = make_product_state(vacuum_projector(8), sigma);
  EXPECT_EQ(s.block(0, 0)(0, 0), Complex(1.0));
  EXPECT_TRUE(s.block(0, 1).isZero(0.0));
  EXPECT_TRUE(s.block(1, 0).isZero(0.0));
  EXPECT_TRUE(s.block(1, 1).isZero(0.0));

  std::mt19937_64 gen(17);
  for (int t = 0; t < 10; ++t) {
    const FockVector v = oracle::random_vector(gen, 12, 6);
    const FockVector w = oracle::random_vector(gen, 12, 6);
    const FockOperator rho = 0.6 * v * v.adjoint() + 0.4 * w * w.adjoint();
    const ElectronicDensity sig = random_sigma(gen);
    const VibronicDensity p = make_product_state(rho, sig);
    EXPECT_LE(linalg::max_abs(reduce_electronic(p) - sig), 1e-12);
    EXPECT_LE(linalg::max_abs(reduce_motional(p) - rho), 1e-12);
    EXPECT_LE(linalg::hermiticity_defect(reduce_electronic(p)), 1e-12);
  }
}

TEST(State, ProductStateRejectsInvalidMarginals) {
  ElectronicDensity sigma = ElectronicDensity::Identity() * 0.5;
  EXPECT_THROW(make_product_state(2.0 * vacuum_projector(8), sigma), Error);
  FockOperator not_psd = FockOperator::Zero(4, 4);
  not_psd(0, 0) = 1.5;
  not_psd(1, 1) = -0.5;
  EXPECT_THROW(make_product_state(not_psd, sigma), Error);
  ElectronicDensity bad = sigma;
  bad(0, 1) = 0.3;
  EXPECT_THROW(make_product_state(vacuum_projector(8), bad), Error);
}

TEST(State, Reductions) {
  const VibronicDensity cat = make_cat_state(2.0, 64);
  const FockVector plus = oracle::coherent(2.0, 64), minus = oracle::coherent(-2.0, 64);
  const FockOperator expected = 0.5 * (plus * plus.adjoint() + minus * minus.adjoint());
  EXPECT_LE(linalg::max_abs(reduce_motional(cat) - expected), 1e-13);
  EXPECT_NEAR(reduce_motional(cat).trace().real(), 1.0, 1e-10);

  const ElectronicDensity sigma = reduce_electronic(cat);
  EXPECT_NEAR(sigma(0, 0).real(), 0.5, 1e-12);
  EXPECT_NEAR(sigma(1, 1).real(), 0.5, 1e-12);
  EXPECT_NEAR(sigma(1, 0).real(), -0.5 * std::exp(-8.0), 1e-15);
  EXPECT_LE(linalg::hermiticity_defect(sigma), 1e-12);
}

TEST(State, Conditioning) {
  const VibronicDensity cat = make_cat_state(2.0, 64);
  EXPECT_TRUE((condition_on_superposition(cat, {1.0, 0.0}) - cat.block(0, 0)).isZero(0.0));
  const FockVector plus = oracle::coherent(2.0, 64);
  EXPECT_LE(linalg::max_abs(condition_on_superposition(cat, {0.0, 1.0}) -
                            0.5 * plus * plus.adjoint()),
            1e-13);

  std::mt19937_64 gen(23);
  for (int t = 0; t < 100; ++t) {
    const double tr = condition_on_superposition(cat, oracle::random_unit2(gen)).trace().real();
    EXPECT_GE(tr, -1e-12);
    EXPECT_LE(tr, 1.0 + 1e-12);
  }
  try {
    condition_on_superposition(cat, {1.0, 1.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_argument);
  }
}

TEST(State, ConditioningIsLinearInState) {
  std::mt19937_64 gen(29);
  for (int t = 0; t < 10; ++t) {
    const VibronicDensity a = oracle::random_state(gen, 10, 6);
    const VibronicDensity b = oracle::random_state(gen, 10, 6);
    VibronicDensity mix(10);
    for (std::size_t k = 0; k < 4; ++k) mix.blocks[k] = 0.3 * a.blocks[k] + 0.7 * b.blocks[k];
    const ElectronicVector psi = oracle::random_unit2(gen);
    const FockOperator lhs = condition_on_superposition(mix, psi);
    const FockOperator rhs =
        0.3 * condition_on_superposition(a, psi) + 0.7 * condition_on_superposition(b, psi);
    EXPECT_LE(linalg::max_abs(lhs - rhs), 1e-14);
  }
}

TEST(State, Displacement) {
  const VibronicDensity cat = make_cat_state(2.0, 64);
  const VibronicDensity same = displace_state(cat, 0.0);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_LE(linalg::max_abs(same.blocks[k] - cat.blocks[k]), 1e-15);

  ElectronicDensity sigma = ElectronicDensity::Zero();
  sigma(1, 1) = 1.0;
  const Complex alpha(0.8, -1.1);
  const VibronicDensity vac = make_product_state(vacuum_projector(64), sigma);
  const VibronicDensity shifted = displace_state(vac, alpha);
  const FockVector minus = oracle::coherent(-alpha, 64);
  EXPECT_LE(linalg::max_abs(shifted.block(1, 1) - minus * minus.adjoint()), 1e-10);

  const Complex beta(1.0, 0.5);
  const VibronicDensity there = displace_state(cat, beta);
  EXPECT_NEAR(there.trace(), 1.0, 1e-10);
  const VibronicDensity back = displace_state(there, -beta);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_LE(linalg::max_abs(back.blocks[k] - cat.blocks[k]), 1e-10);

  EXPECT_THROW(displace_state(cat, 3.5), Error);
}

TEST(State, NumberStatisticsOfVacuumProduct) {
  std::mt19937_64 gen(31);
  const ElectronicDensity sigma = random_sigma(gen);
  const VibronicDensity s = make_product_state(vacuum_projector(16), sigma);
  const NumberStatistics stats = displaced_number_statistics(s, 0.0, 16);
  EXPECT_LE(linalg::max_abs(stats.values[0] - sigma), 1e-14);
  for (Index n = 1; n < 16; ++n) EXPECT_LE(stats.values[static_cast<std::size_t>(n)].norm(), 1e-15);
}

TEST(State, CatStatisticsArePoisson) {
  const VibronicDensity cat = make_cat_state(2.0, 64);
  const NumberStatistics stats = displaced_number_statistics(cat, 0.0, 40);
  for (int n = 0; n < 40; ++n) {
    const Eigen::Matrix2cd& v = stats.values[static_cast<std::size_t>(n)];
    EXPECT_NEAR(v(1, 1).real(), 0.5 * oracle::poisson(4.0, n), 1e-13) << n;
    EXPECT_NEAR(v(0, 0).real(), 0.5 * oracle::poisson(4.0, n), 1e-13) << n;
    // <n|beta><-beta|n> = (-1)^n P(n)
    EXPECT_NEAR(v(1, 0).real(), -0.5 * (n % 2 ? -1.0 : 1.0) * oracle::poisson(4.0, n), 1e-13);
  }
}

TEST(State, NumberStatisticsInvariantsOnDefaultGrid) {
  const VibronicDensity cat = make_cat_state(2.0, 82);
  const PhaseSpaceGrid grid;
  for (Index k = 0; k < grid.size(); k += 7) {
    const NumberStatistics stats = displaced_number_statistics(cat, grid.point(k), 82);
    double sum = 0.0;
    for (const auto& v : stats.values) {
      EXPECT_EQ(v(0, 0).imag(), 0.0);
      EXPECT_EQ(v(1, 0), std::conj(v(0, 1)));
      EXPECT_GE(v(0, 0).real(), -1e-10);
      EXPECT_LE(v(1, 1).real(), 1.0 + 1e-10);
      sum += v(0, 0).real() + v(1, 1).real();
    }
    EXPECT_NEAR(sum, 1.0, 1e-8) << grid.point(k);
  }
}

TEST(State, NumberStatisticsMatchDisplacedBlocks) {
  std::mt19937_64 gen(37);
  const VibronicDensity s = oracle::random_state(gen, 48, 8);
  const Complex alpha(-0.7, 1.2);
  const NumberStatistics stats = displaced_number_statistics(s, alpha, 48);
  const VibronicDensity d = displace_state(s, alpha);
  for (Index n = 0; n < 48; ++n)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        EXPECT_LE(std::abs(stats.values[static_cast<std::size_t>(n)](i, j) - d.block(i, j)(n, n)),
                  1e-12);
}

TEST(State, SpectralStatisticsMatchDirectRoute) {
  const VibronicDensity cat = make_cat_state({2.0, 0.0}, 82);
  const DisplacementSpectrum spectrum(82);
  for (const Complex alpha : {Complex(0.0, 0.0), Complex(-3.5, 2.0), Complex(1.2, -0.4)}) {
    const NumberStatistics a = displaced_number_statistics(cat, alpha, 82);
    const NumberStatistics b = displaced_number_statistics(cat, alpha, 82, spectrum);
    for (Index n = 0; n < 82; ++n)
      EXPECT_LE((a.values[static_cast<std::size_t>(n)] - b.values[static_cast<std::size_t>(n)])
                    .cwiseAbs()
                    .maxCoeff(),
                1e-12);
  }
  EXPECT_THROW(displaced_number_statistics(cat, 0.0, 82, DisplacementSpectrum(64)), Error);
}

TEST(State, StatisticsCutoff) {
  const VibronicDensity cat = make_cat_state(2.0, 64);
  const NumberStatistics stats = displaced_number_statistics(cat, 0.0, 64);
  const Index cut = statistics_cutoff(stats, 1e-6);
  double tail = 0.0;
  for (int n = static_cast<int>(cut); n < 64; ++n) tail += oracle::poisson(4.0, n);
  EXPECT_LT(tail, 1e-6);
  EXPECT_GE(tail + oracle::poisson(4.0, static_cast<int>(cut) - 1), 1e-6);
}

TEST(State, ValidationRejectsBrokenStates) {
  VibronicDensity s = make_cat_state(1.0, 16);
  s.block(0, 1)(0, 0) += 0.1;
  try {
    validate(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_state);
  }
  VibronicDensity half = make_cat_state(1.0, 16);
  for (auto& b : half.blocks) b *= 0.5;
  EXPECT_THROW(validate(half), Error);
  half.normalization = Normalization::conditioned;
  EXPECT_NO_THROW(validate(half));
}
