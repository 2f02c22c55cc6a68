#include "vibronic/fock.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "oracles.hpp"

using namespace vibronic;

TEST(Linalg, ExpmMatchesEigenReferenceAcrossPadeOrders) {
  std::mt19937_64 gen(11);
  for (const double scale : {1e-3, 0.05, 0.4, 1.5, 4.0, 40.0}) {
    Eigen::MatrixXcd a(12, 12);
    for (Index i = 0; i < a.size(); ++i) a.data()[i] = oracle::random_complex(gen, scale / 12.0);
    const Eigen::MatrixXcd ours = linalg::expm(a);
    const Eigen::MatrixXcd reference = a.exp();
    EXPECT_LT(linalg::max_abs(ours - reference), 1e-10 * std::max(1.0, linalg::max_abs(reference)))
        << "scale " << scale;
  }
}

TEST(Linalg, ExpmOfDiagonalIsElementwise) {
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(3, 3);
  d(0, 0) = 0.5;
  d(1, 1) = Complex(0.0, 2.0);
  d(2, 2) = -7.0;
  const Eigen::MatrixXcd e = linalg::expm(d);
  EXPECT_NEAR(std::abs(e(0, 0) - std::exp(0.5)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(e(1, 1) - std::exp(Complex(0.0, 2.0))), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(e(2, 2) - std::exp(-7.0)), 0.0, 1e-15);
}

TEST(Linalg, FidelityOfPureStatesIsOverlapSquared) {
  Eigen::VectorXcd a(2), b(2);
  a << 1.0, 0.0;
  b << std::sqrt(0.5), std::sqrt(0.5);
  EXPECT_NEAR(linalg::fidelity(a * a.adjoint(), b * b.adjoint()), 0.5, 1e-12);
  EXPECT_NEAR(linalg::fidelity(a * a.adjoint(), a * a.adjoint()), 1.0, 1e-12);
}

TEST(Fock, AnnihilationLadder) {
  const FockOperator a2 = annihilation(2);
  EXPECT_EQ(a2(0, 0), Complex(0.0));
  EXPECT_EQ(a2(0, 1), Complex(1.0));
  EXPECT_EQ(a2(1, 0), Complex(0.0));
  EXPECT_EQ(a2(1, 1), Complex(0.0));

  const FockOperator a = annihilation(8);
  EXPECT_DOUBLE_EQ(a(2, 3).real(), std::sqrt(3.0));
  const FockOperator n = a.adjoint() * a;
  for (Index k = 0; k < 8; ++k) EXPECT_NEAR(n(k, k).real(), static_cast<double>(k), 1e-15);
  EXPECT_TRUE((n - number_operator(8)).isZero(1e-15));
}

TEST(Fock, RejectsTooSmallDimension) {
  try {
    annihilation(1);
    FAIL() << "expected invalid-dimension";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_dimension);
  }
  EXPECT_THROW(parity_operator(0), Error);
}

TEST(Fock, GuardBandRule) {
  EXPECT_TRUE(GuardBand::admits(5.0, 64));   // 25 + 30 + 9 = 64
  EXPECT_FALSE(GuardBand::admits(5.01, 64));
  EXPECT_EQ(GuardBand::required_dimension(2.0), 25);
  EXPECT_NEAR(GuardBand::max_amplitude(64), 5.0, 1e-15);
  try {
    coherent_state(6.0, 64);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::truncation_unsafe);
  }
}

TEST(Fock, CoherentStateValues) {
  const FockVector vac = coherent_state(0.0, 16);
  EXPECT_EQ(vac(0), Complex(1.0));
  EXPECT_TRUE(vac.tail(15).isZero(0.0));

  const FockVector c = coherent_state(2.0, 64);
  EXPECT_NEAR(c(0).real(), 0.135335283236613, 1e-12);  // e^{-2}
  EXPECT_NEAR(c.squaredNorm(), 1.0, 1e-12);
  EXPECT_LT((c - oracle::coherent(2.0, 64)).cwiseAbs().maxCoeff(), 1e-13);

  const Complex overlap = coherent_state(-2.0, 64).dot(c);
  EXPECT_NEAR(overlap.real(), 3.35462627902512e-4, 1e-15);  // e^{-8}
  EXPECT_NEAR(overlap.imag(), 0.0, 1e-15);
}

TEST(Fock, DisplacementOfVacuumIsCoherent) {
  EXPECT_TRUE(displacement_operator(0.0, 10).isIdentity(0.0));
  for (const Complex alpha : {Complex(2.0, 0.0), Complex(-1.3, 0.7), Complex(0.2, -2.9)}) {
    const FockOperator d = displacement_operator(alpha, 64);
    const FockVector shifted = d.col(0);
    EXPECT_LT((shifted - coherent_state(alpha, 64)).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_NEAR(std::abs(d(0, 0) - std::exp(-0.5 * std::norm(alpha))), 0.0, 1e-12);
    const FockOperator back = displacement_operator(-alpha, 64);
    EXPECT_LT(linalg::max_abs(d * back - FockOperator::Identity(64, 64)), 1e-12);
  }
}

TEST(Fock, DisplacementIsUnitaryUpToAlphaFour) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> radius(0.0, 4.0), angle(-kPi, kPi);
  for (const Index n_max : {64, 96}) {
    for (int trial = 0; trial < 12; ++trial) {
      const Complex alpha = std::polar(radius(gen), angle(gen));
      EXPECT_LE(linalg::unitarity_defect(displacement_operator(alpha, n_max)), 1e-12);
    }
  }
}

TEST(Fock, DisplacementMatchesLaguerreClosedFormInGuardBand) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> radius(0.0, 3.0), angle(-kPi, kPi);
  for (int trial = 0; trial < 6; ++trial) {
    const Complex alpha = std::polar(radius(gen), angle(gen));
    const FockOperator d = displacement_operator(alpha, 64);
    double worst = 0.0;
    for (int m = 0; m <= 24; ++m)
      for (int n = 0; n <= 24; ++n)
        worst = std::max(worst, std::abs(d(m, n) - oracle::displacement_element(alpha, m, n)));
    EXPECT_LE(worst, 1e-8) << "alpha = " << alpha;
  }
}

TEST(Fock, ParityActions) {
  const FockOperator p = parity_operator(64);
  EXPECT_EQ((p * fock_state(0, 64))(0), Complex(1.0));
  EXPECT_EQ((p * fock_state(1, 64))(1), Complex(-1.0));
  const Complex gamma(1.1, -0.6);
  EXPECT_LT((p * coherent_state(gamma, 64) - coherent_state(-gamma, 64)).cwiseAbs().maxCoeff(),
            1e-10);
}

TEST(Fock, DisplacedParityProperties) {
  EXPECT_TRUE((displaced_parity(0.0, 32) - parity_operator(32)).isZero(0.0));
  for (const Complex alpha : {Complex(0.4, 0.3), Complex(-1.5, 2.0), Complex(3.0, -1.0)}) {
    const FockOperator k = displaced_parity(alpha, 64);
    EXPECT_LE(linalg::hermiticity_defect(k), 1e-12);
    EXPECT_LE(linalg::max_abs(k * k - FockOperator::Identity(64, 64)), 1e-12);
    Eigen::SelfAdjointEigenSolver<FockOperator> eig(k);
    for (Index i = 0; i < 64; ++i) EXPECT_NEAR(std::abs(eig.eigenvalues()(i)), 1.0, 1e-11);
  }
}

TEST(Fock, DisplacedParityOnCoherentState) {
  const Complex alpha(0.3, 0.2), gamma(0.5, -0.7);
  const FockVector out = displaced_parity(alpha, 64) * coherent_state(gamma, 64);
  const Complex phase = std::polar(1.0, -2.0 * (alpha * std::conj(gamma)).imag());
  const FockVector expected = phase * oracle::coherent(2.0 * alpha - gamma, 64);
  EXPECT_LT((out - expected).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Fock, SpectralDisplacementAgreesWithPade) {
  const DisplacementSpectrum spectrum(72);
  for (const Complex alpha : {Complex(0.0, 0.0), Complex(1.0, 0.0), Complex(-2.2, 1.7),
                              Complex(0.1, -3.9), Complex(0.0, 4.5)}) {
    EXPECT_LE(linalg::max_abs(spectrum.displacement(alpha) - displacement_operator(alpha, 72)),
              1e-12);
    EXPECT_LE(linalg::max_abs(spectrum.displaced_parity(alpha) - displaced_parity(alpha, 72)),
              1e-12);
    EXPECT_LE(linalg::unitarity_defect(spectrum.displacement(alpha)), 1e-12);
  }
}
