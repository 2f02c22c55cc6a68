#include "vibronic/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace vibronic {

void DriveConfig::validate() const {
  if (!(rabi_magnitude > 0.0) || !std::isfinite(rabi_magnitude)) {
    throw Error(ErrorCode::invalid_argument, "Rabi frequency magnitude must be positive");
  }
  if (!(lamb_dicke >= 0.0) || !std::isfinite(lamb_dicke)) {
    throw Error(ErrorCode::invalid_argument, "Lamb-Dicke parameter must be non-negative");
  }
  if (!(phase > -kPi && phase <= kPi)) {
    throw Error(ErrorCode::invalid_argument,
                "laser phase must lie in (-pi, pi], got " + std::to_string(phase));
  }
}

double laguerre(Index n, double x) {
  if (n < 0) throw Error(ErrorCode::invalid_argument, "Laguerre degree must be >= 0");
  double previous = 1.0;
  if (n == 0) return previous;
  double current = 1.0 - x;
  for (Index k = 1; k < n; ++k) {
    const double kd = static_cast<double>(k);
    const double next = ((2.0 * kd + 1.0 - x) * current - kd * previous) / (kd + 1.0);
    previous = current;
    current = next;
  }
  return current;
}

double coupling_diagonal(double eta, Index n) {
  if (!(eta >= 0.0)) throw Error(ErrorCode::invalid_argument, "eta must be >= 0");
  const double x = eta * eta;
  return std::exp(-0.5 * x) * laguerre(n, x);
}

double rabi_frequency(const DriveConfig& drive, Index n) {
  return drive.rabi_magnitude * coupling_diagonal(drive.lamb_dicke, n);
}

std::vector<double> rabi_spectrum(const DriveConfig& drive, Index n_max) {
  // One pass of the same recurrence as laguerre(), so entries equal rabi_frequency(drive, n).
  std::vector<double> omega(static_cast<std::size_t>(std::max<Index>(n_max, 0)));
  const double x = drive.lamb_dicke * drive.lamb_dicke;
  const double envelope = std::exp(-0.5 * x);
  double previous = 1.0, current = 1.0 - x;
  for (Index n = 0; n < n_max; ++n) {
    double value = previous;
    if (n == 1) {
      value = current;
    } else if (n > 1) {
      const double kd = static_cast<double>(n - 1);
      const double next = ((2.0 * kd + 1.0 - x) * current - kd * previous) / (kd + 1.0);
      previous = current;
      current = next;
      value = current;
    }
    omega[static_cast<std::size_t>(n)] = drive.rabi_magnitude * (envelope * value);
  }
  return omega;
}

Eigen::MatrixXcd build_hamiltonian(const DriveConfig& drive, Index n_max) {
  drive.validate();
  require_dimension(n_max);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(2 * n_max, 2 * n_max);
  const Complex omega = drive.rabi();
  for (Index n = 0; n < n_max; ++n) {
    const Complex coupling = 0.5 * omega * coupling_diagonal(drive.lamb_dicke, n);
    h(kLevel1 * n_max + n, kLevel2 * n_max + n) = coupling;
    h(kLevel2 * n_max + n, kLevel1 * n_max + n) = std::conj(coupling);
  }
  return h;
}

Eigen::MatrixXcd composite_number_operator(Index n_max) {
  require_dimension(n_max);
  Eigen::MatrixXcd n_op = Eigen::MatrixXcd::Zero(2 * n_max, 2 * n_max);
  for (int i = 0; i < 2; ++i)
    for (Index n = 0; n < n_max; ++n) n_op(i * n_max + n, i * n_max + n) = static_cast<double>(n);
  return n_op;
}

Eigen::Matrix2cd block_propagator(const DriveConfig& drive, Index n, double tau) {
  // H_n = (Omega_n / 2)(e^{i phi} |1><2| + e^{-i phi} |2><1|) squares to (Omega_n/2)^2.
  const double theta = 0.5 * rabi_frequency(drive, n) * tau;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const Complex minus_i(0.0, -1.0);
  Eigen::Matrix2cd u;
  u(0, 0) = c;
  u(1, 1) = c;
  u(0, 1) = minus_i * s * std::polar(1.0, drive.phase);
  u(1, 0) = minus_i * s * std::polar(1.0, -drive.phase);
  return u;
}

VibronicDensity evolve_oracle(const VibronicDensity& state, const DriveConfig& drive, double tau) {
  const Index n = state.dimension();
  const Eigen::MatrixXcd h = build_hamiltonian(drive, n);
  const Eigen::MatrixXcd u = linalg::expm(Complex(0.0, -tau) * h);
  const Eigen::MatrixXcd evolved = u * state.assembled() * u.adjoint();
  return VibronicDensity::from_assembled(evolved, n, state.normalization);
}

VibronicDensity project_no_fluorescence(const VibronicDensity& state) {
  VibronicDensity out(state.dimension());
  out.block(kLevel2, kLevel2) = state.block(kLevel2, kLevel2);
  out.normalization = Normalization::conditioned;
  return out;
}

std::vector<double> reduced_after_first_cycle(const NumberStatistics& stats,
                                              const DriveConfig& drive, double tau1) {
  std::vector<double> out(stats.values.size());
  const std::vector<double> omega = rabi_spectrum(drive, stats.size());
  const Complex rotation = std::polar(1.0, -drive.phase);
  for (std::size_t n = 0; n < out.size(); ++n) {
    const Eigen::Matrix2cd& v = stats.values[n];
    const double angle = omega[n] * tau1;
    const double c = std::cos(0.5 * angle);
    const double s = std::sin(0.5 * angle);
    out[n] = v(kLevel2, kLevel2).real() * c * c + v(kLevel1, kLevel1).real() * s * s +
             (v(kLevel1, kLevel2) * rotation).imag() * std::sin(angle);
  }
  return out;
}

std::vector<double> cycle_product(std::span<const double> reduced_tau1, const DriveConfig& drive,
                                  std::span<const double> taus) {
  std::vector<double> out(reduced_tau1.begin(), reduced_tau1.end());
  const std::vector<double> omega = rabi_spectrum(drive, static_cast<Index>(out.size()));
  for (std::size_t n = 0; n < out.size(); ++n) {
    for (const double tau : taus) {
      const double c = std::cos(0.5 * omega[n] * tau);
      out[n] *= c * c;
    }
  }
  return out;
}

double success_probability(std::span<const double> filtered) {
  return std::accumulate(filtered.begin(), filtered.end(), 0.0);
}

}  // namespace vibronic
