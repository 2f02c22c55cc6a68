#pragma once

#include <array>
#include <vector>

#include "vibronic/fock.hpp"

namespace vibronic {

/// Electronic levels of the weak transition. |1> is the level that fluoresces
/// when probed on the strong transition, |2> stays dark.
enum Level : int { kLevel1 = 0, kLevel2 = 1 };

using ElectronicDensity = Eigen::Matrix2cd;
using ElectronicVector = Eigen::Vector2cd;

/// Whether a state is expected to carry unit trace. Conditioned objects (after
/// a measurement outcome) keep their trace equal to the outcome probability.
enum class Normalization { unit, conditioned };

/// Composite motional x electronic density operator stored as the 2x2 array of
/// motional blocks rho_ij = <i| rho |j>.
struct VibronicDensity {
  std::array<FockOperator, 4> blocks;
  Normalization normalization = Normalization::unit;

  VibronicDensity() = default;
  explicit VibronicDensity(Index n_max);

  Index dimension() const { return blocks[0].rows(); }

  FockOperator& block(int i, int j) { return blocks[static_cast<std::size_t>(2 * i + j)]; }
  const FockOperator& block(int i, int j) const {
    return blocks[static_cast<std::size_t>(2 * i + j)];
  }

  double trace() const;

  /// 2N x 2N matrix in electronic-major order: row index = i * N + n.
  Eigen::MatrixXcd assembled() const;
  static VibronicDensity from_assembled(const Eigen::MatrixXcd& full, Index n_max,
                                        Normalization normalization = Normalization::unit);
};

struct StateDiagnostics {
  double hermiticity = 0.0;     ///< max |rho_ij - rho_ji^dagger|
  double trace = 0.0;
  double min_eigenvalue = 0.0;  ///< of the assembled operator

  bool ok(Normalization normalization, double trace_tol = 1e-10) const;
};

StateDiagnostics diagnose(const VibronicDensity& state);

/// Throws ErrorCode::invalid_state when hermiticity, trace or positivity fail.
void validate(const VibronicDensity& state);

/// sqrt(<n>) of the motional marginal; used as the state's extent in guard-band
/// checks.
double motional_amplitude(const VibronicDensity& state);

/// (|beta>|2> - |-beta>|1>) / sqrt(2)
VibronicDensity make_cat_state(Complex beta, Index n_max);

/// rho_ij = sigma_ij * rho
VibronicDensity make_product_state(const FockOperator& rho, const ElectronicDensity& sigma);

/// |psi> = |level1> |1> + |level2> |2> (not renormalised).
VibronicDensity make_pure_state(const FockVector& level1, const FockVector& level2);

FockOperator reduce_motional(const VibronicDensity& state);
ElectronicDensity reduce_electronic(const VibronicDensity& state);

/// sum_ij conj(psi_i) psi_j rho_ij, unnormalised; its trace is the probability of
/// detecting the electronic superposition psi.
FockOperator condition_on_superposition(const VibronicDensity& state, const ElectronicVector& psi);

/// D(alpha)^dagger rho_ij D(alpha) for every block.
VibronicDensity displace_state(const VibronicDensity& state, Complex alpha);

/// Motional-diagonal electronic blocks of the displaced state:
/// values[n](i, j) = <n| D^dagger(alpha) rho_ij D(alpha) |n>.
struct NumberStatistics {
  Complex alpha{0.0, 0.0};
  std::vector<Eigen::Matrix2cd> values;
  /// Trace of the displaced state over the whole truncated space.
  double total_trace = 1.0;

  Index size() const { return static_cast<Index>(values.size()); }
  /// total_trace minus the retained occupation sum_n (values[n](0,0) + values[n](1,1)).
  double completeness_deficit() const;
};

NumberStatistics displaced_number_statistics(const VibronicDensity& state, Complex alpha,
                                             Index n_stat);

/// Same, with D(alpha) taken from a precomputed spectrum of the state's dimension.
NumberStatistics displaced_number_statistics(const VibronicDensity& state, Complex alpha,
                                             Index n_stat, const DisplacementSpectrum& spectrum);

/// Smallest count n* + 1 such that the occupation beyond n* is below `tail`.
Index statistics_cutoff(const NumberStatistics& stats, double tail = 1e-6);

}  // namespace vibronic
