#pragma once

#include <complex>

#include <Eigen/Dense>

namespace vibronic {

using Complex = std::complex<double>;
using Index = Eigen::Index;

inline constexpr double kPi = 3.14159265358979323846;

namespace linalg {

/// Matrix exponential by scaling and squaring with diagonal Pade
/// approximants of degree 3..13 (Higham's 2005 selection thresholds).
Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a);

/// Largest absolute entry.
double max_abs(const Eigen::MatrixXcd& a);

/// max |U^dagger U - I|
double unitarity_defect(const Eigen::MatrixXcd& u);

/// max |A - A^dagger|
double hermiticity_defect(const Eigen::MatrixXcd& a);

/// (A + A^dagger) / 2
Eigen::MatrixXcd hermitian_part(const Eigen::MatrixXcd& a);

/// Smallest eigenvalue of the hermitian part of `a`.
double min_eigenvalue(const Eigen::MatrixXcd& a);

/// Square root of the hermitian part of `a`, negative eigenvalues clipped to 0.
Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& a);

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2. Both arguments are
/// hermitized and clipped to their positive parts; no renormalisation.
double fidelity(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& sigma);

}  // namespace linalg
}  // namespace vibronic
