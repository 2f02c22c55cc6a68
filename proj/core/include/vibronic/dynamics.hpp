#pragma once

#include <span>
#include <vector>

#include "vibronic/state.hpp"

/// Resonant driving of the weak |1> <-> |2> transition with the nonlinear
/// vibronic coupling f(n) = exp(-eta^2/2) L_n(eta^2). hbar = 1 throughout.
namespace vibronic {

/// Omega = rabi_magnitude * exp(i phase).
struct DriveConfig {
  double rabi_magnitude = 1.0;
  double phase = 0.0;
  double lamb_dicke = 0.1;

  Complex rabi() const { return std::polar(rabi_magnitude, phase); }
  /// Throws ErrorCode::invalid_argument unless |Omega| > 0, eta >= 0 and
  /// phase lies in (-pi, pi].
  void validate() const;
};

/// L_n(x) by the three-term recurrence.
double laguerre(Index n, double x);

/// exp(-eta^2/2) L_n(eta^2)
double coupling_diagonal(double eta, Index n);

/// Signed vibronic Rabi frequency Omega_n = |Omega| exp(-eta^2/2) L_n(eta^2).
double rabi_frequency(const DriveConfig& drive, Index n);

std::vector<double> rabi_spectrum(const DriveConfig& drive, Index n_max);

/// H = (1/2) Omega f(n) |1><2| + h.c. on the composite space, electronic-major
/// ordering (row = i * N_max + n). Only entries coupling |1,n> and |2,n> are
/// non-zero.
Eigen::MatrixXcd build_hamiltonian(const DriveConfig& drive, Index n_max);

/// n (x) 1 in the same ordering.
Eigen::MatrixXcd composite_number_operator(Index n_max);

/// exp(-i H tau) restricted to the 2x2 block of Fock index n (basis |1,n>, |2,n>).
Eigen::Matrix2cd block_propagator(const DriveConfig& drive, Index n, double tau);

/// Dense propagator U = exp(-i H tau) from the generic matrix exponential;
/// returns U rho U^dagger.
VibronicDensity evolve_oracle(const VibronicDensity& state, const DriveConfig& drive, double tau);

/// |2><2| rho |2><2|: the unnormalised state after a probe without fluorescence.
VibronicDensity project_no_fluorescence(const VibronicDensity& state);

/// rho_nn^(red)(tau1) = rho22 cos^2(Omega_n tau1/2) + rho11 sin^2(Omega_n tau1/2)
///                      + Im[rho12 exp(-i phase)] sin(Omega_n tau1)
std::vector<double> reduced_after_first_cycle(const NumberStatistics& stats,
                                              const DriveConfig& drive, double tau1);

/// Multiplies entry n by prod_q cos^2(Omega_n tau_q / 2).
std::vector<double> cycle_product(std::span<const double> reduced_tau1, const DriveConfig& drive,
                                  std::span<const double> taus);

/// sum_n filtered[n]
double success_probability(std::span<const double> filtered);

}  // namespace vibronic
