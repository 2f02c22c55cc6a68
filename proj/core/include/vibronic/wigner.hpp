#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vibronic/state.hpp"

/// Wigner-function matrices W_ij(alpha) = (2/pi) Tr[rho_ij D(alpha) P D(alpha)^dagger].
///
/// Conventions: indices 0/1 stand for the electronic levels |1>/|2>; the
/// diagonal entries integrate to the occupations sigma_ii (conditioned Wigner
/// functions stay unnormalised); the 2/pi prefactor is applied only here.
namespace vibronic {

inline constexpr double kWignerPrefactor = 2.0 / kPi;

/// One-sigma statistical errors of a sampled Wigner matrix.
struct WignerStderr {
  double w11 = 0.0;
  double w22 = 0.0;
  double re_w12 = 0.0;
  double im_w12 = 0.0;
};

struct WignerSample {
  Complex alpha{0.0, 0.0};
  Eigen::Matrix2cd w = Eigen::Matrix2cd::Zero();
  std::optional<WignerStderr> stderr;
  /// Systematic bound from imperfect Fock filtering (sampled fields only).
  double leakage_bound = 0.0;
};

/// Rectangular lattice of phase-space points. Sample k sits at
/// (re index k % n_re, im index k / n_re): the real part varies fastest.
struct PhaseSpaceGrid {
  double re_min = -3.5;
  double re_max = 3.5;
  Index n_re = 25;
  double im_min = -2.0;
  double im_max = 2.0;
  Index n_im = 15;

  Index size() const { return n_re * n_im; }
  double re_step() const;
  double im_step() const;
  double cell_area() const { return re_step() * im_step(); }
  Complex point(Index k) const;
  /// Largest |alpha| on the grid.
  double max_amplitude() const;
  /// Throws ErrorCode::invalid_argument for non-increasing or empty axes.
  void validate() const;

  static PhaseSpaceGrid square(double half_width, Index points);

  bool operator==(const PhaseSpaceGrid&) const = default;
};

struct WignerField {
  PhaseSpaceGrid grid;
  std::vector<WignerSample> samples;
};

/// (2/pi) Tr[rho D(alpha) P D(alpha)^dagger] for a single-mode density operator.
double wigner_scalar(const FockOperator& rho, Complex alpha);

/// Kernel-trace evaluation of the full 2x2 matrix.
WignerSample wigner_matrix_exact(const VibronicDensity& state, Complex alpha);

/// Same quantity for every grid point, using one DisplacementSpectrum for the
/// whole sweep. Order-independent; `threads` = 0 uses all cores.
WignerField exact_field(const VibronicDensity& state, const PhaseSpaceGrid& grid,
                        unsigned threads = 1);

/// (2/pi) sum_n (-1)^n stats[n]. Throws ErrorCode::series_truncation when the
/// occupation missing from `stats` exceeds `tail_tolerance`.
WignerSample wigner_from_number_statistics(const NumberStatistics& stats,
                                           double tail_tolerance = 1e-6);

/// w11 + w22: the Wigner function of the motional marginal.
double wigner_reduced(const WignerSample& sample);

/// sum_ij conj(psi_i) psi_j w_ij
double wigner_conditioned(const WignerSample& sample, const ElectronicVector& psi);

struct ElectronicMarginal {
  ElectronicDensity sigma = ElectronicDensity::Zero();
  /// |S(h) - S(2h)| on every-other-point subgrids plus the boundary-ring mass.
  double quadrature_error = 0.0;
  /// max |w| on the grid boundary relative to max |w| overall.
  double edge_ratio = 0.0;
  bool coverage_ok = true;
  std::string warning;
};

/// Riemann sum of w_ij over the grid: approximates sigma_ij.
ElectronicMarginal integrate_field(const WignerField& field, double edge_threshold = 1e-3);

struct Reconstruction {
  VibronicDensity state;
  /// Leading Fock block that the truncated kernels resolve: floor((sqrt(N_max) - max|alpha|)^2).
  /// Entries beyond it absorb the truncation error, so the full trace is not meaningful.
  Index reliable_dimension = 0;
  bool quality_ok = true;
  std::string warning;
};

/// rho_ij = sum_grid w_ij(alpha) 2 D(alpha) P D(alpha)^dagger dA. Plain
/// Riemann quadrature, no regularisation; quality warnings flag grids that are
/// coarser than 0.125 or whose boundary still carries weight.
Reconstruction invert_to_density(const WignerField& field, Index n_max, unsigned threads = 1);

/// Closed form for (|beta>|2> - |-beta>|1>)/sqrt(2):
///   w11 = (1/pi) exp(-2|alpha + beta|^2)
///   w22 = (1/pi) exp(-2|alpha - beta|^2)
///   w12 = -(1/pi) exp(-2|alpha|^2) exp(+4i Im(alpha conj(beta))),  w21 = conj(w12)
WignerSample analytic_cat_wigner(Complex beta, Complex alpha);

}  // namespace vibronic
