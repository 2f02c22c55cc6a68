#pragma once

#include <string_view>

#include "vibronic/errors.hpp"
#include "vibronic/linalg.hpp"

/// Truncated Fock-space algebra for a single motional mode.
///
/// Operators are dense N_max x N_max complex matrices indexed by occupation
/// number. Everything here is a pure function of its arguments.
namespace vibronic {

using FockVector = Eigen::VectorXcd;
using FockOperator = Eigen::MatrixXcd;

inline constexpr Index kDefaultDimension = 64;

/// Truncation guard band: an amplitude |a| is representable in N_max levels
/// when |a|^2 + 6|a| + 9 <= N_max, i.e. (|a| + 3)^2 <= N_max.
struct GuardBand {
  static bool admits(double amplitude, Index n_max);
  /// Smallest N_max that admits `amplitude`.
  static Index required_dimension(double amplitude);
  /// Largest amplitude admitted by `n_max`.
  static double max_amplitude(Index n_max);
};

/// Throws ErrorCode::truncation_unsafe if the guard band is violated.
void require_guard_band(double amplitude, Index n_max, std::string_view context);

/// Throws ErrorCode::invalid_dimension for n_max < 2.
void require_dimension(Index n_max);

FockOperator annihilation(Index n_max);
FockOperator number_operator(Index n_max);
FockVector fock_state(Index n, Index n_max);

/// c_n = exp(-|gamma|^2/2) gamma^n / sqrt(n!)
FockVector coherent_state(Complex gamma, Index n_max);

/// exp(alpha a^dagger - conj(alpha) a) of the truncated generator. Unitary by
/// construction, so matrix elements near the truncation edge deviate from the
/// infinite-dimensional ones; the guard band keeps the leading block accurate.
FockOperator displacement_operator(Complex alpha, Index n_max);

/// diag((-1)^n)
FockOperator parity_operator(Index n_max);

/// D(alpha) (-1)^{a^dagger a} D(alpha)^dagger, without the 2/pi Wigner prefactor.
/// Hermitian and unitary with eigenvalues +-1.
FockOperator displaced_parity(Complex alpha, Index n_max);

/// Spectral form of the same truncated exponential, for sweeps over many
/// phase-space points at one truncation. With alpha = |alpha| e^{i theta},
///   alpha a^dagger - conj(alpha) a = -i |alpha| T J T^dagger,
/// where J = a + a^dagger is real symmetric and T = diag(e^{i n (theta + pi/2)}).
/// One eigendecomposition J = V diag(lambda) V^T then gives every D(alpha) and
/// displaced parity with two dense products and no further factorisation.
class DisplacementSpectrum {
 public:
  explicit DisplacementSpectrum(Index n_max);

  Index dimension() const { return eigenvalues_.size(); }

  FockOperator displacement(Complex alpha) const;
  /// D(alpha) (-1)^{a^dagger a} D(alpha)^dagger
  FockOperator displaced_parity(Complex alpha) const;

 private:
  Eigen::VectorXcd phases(Complex alpha) const;

  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd eigenvectors_;
  Eigen::MatrixXd parity_in_eigenbasis_;  // V^T P V
};

}  // namespace vibronic
