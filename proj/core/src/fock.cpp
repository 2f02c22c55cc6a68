#include "vibronic/fock.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace vibronic {

bool GuardBand::admits(double amplitude, Index n_max) {
  const double a = std::abs(amplitude);
  return a * a + 6.0 * a + 9.0 <= static_cast<double>(n_max);
}

Index GuardBand::required_dimension(double amplitude) {
  const double a = std::abs(amplitude);
  return static_cast<Index>(std::ceil(a * a + 6.0 * a + 9.0));
}

double GuardBand::max_amplitude(Index n_max) {
  return std::sqrt(static_cast<double>(n_max)) - 3.0;
}

void require_guard_band(double amplitude, Index n_max, std::string_view context) {
  if (!GuardBand::admits(amplitude, n_max)) {
    throw Error(ErrorCode::truncation_unsafe,
                std::string(context) + ": amplitude " + std::to_string(amplitude) +
                    " needs N_max >= " +
                    std::to_string(GuardBand::required_dimension(amplitude)) + ", have " +
                    std::to_string(n_max));
  }
}

void require_dimension(Index n_max) {
  if (n_max < 2) {
    throw Error(ErrorCode::invalid_dimension,
                "truncation dimension must be >= 2, got " + std::to_string(n_max));
  }
}

FockOperator annihilation(Index n_max) {
  require_dimension(n_max);
  FockOperator a = FockOperator::Zero(n_max, n_max);
  for (Index n = 1; n < n_max; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

FockOperator number_operator(Index n_max) {
  require_dimension(n_max);
  FockOperator n_op = FockOperator::Zero(n_max, n_max);
  for (Index n = 0; n < n_max; ++n) n_op(n, n) = static_cast<double>(n);
  return n_op;
}

FockVector fock_state(Index n, Index n_max) {
  require_dimension(n_max);
  if (n < 0 || n >= n_max) {
    throw Error(ErrorCode::invalid_argument, "Fock index " + std::to_string(n) + " outside [0, " +
                                                 std::to_string(n_max) + ")");
  }
  FockVector v = FockVector::Zero(n_max);
  v(n) = 1.0;
  return v;
}

FockVector coherent_state(Complex gamma, Index n_max) {
  require_dimension(n_max);
  require_guard_band(std::abs(gamma), n_max, "coherent_state");
  FockVector c(n_max);
  c(0) = std::exp(-0.5 * std::norm(gamma));
  for (Index n = 1; n < n_max; ++n) c(n) = c(n - 1) * gamma / std::sqrt(static_cast<double>(n));
  return c;
}

FockOperator displacement_operator(Complex alpha, Index n_max) {
  require_dimension(n_max);
  require_guard_band(std::abs(alpha), n_max, "displacement_operator");
  if (alpha == Complex(0.0, 0.0)) return FockOperator::Identity(n_max, n_max);
  const FockOperator a = annihilation(n_max);
  const FockOperator generator = alpha * a.adjoint() - std::conj(alpha) * a;
  return linalg::expm(generator);
}

FockOperator parity_operator(Index n_max) {
  require_dimension(n_max);
  FockOperator p = FockOperator::Zero(n_max, n_max);
  for (Index n = 0; n < n_max; ++n) p(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
  return p;
}

FockOperator displaced_parity(Complex alpha, Index n_max) {
  const FockOperator d = displacement_operator(alpha, n_max);
  FockOperator dp = d;
  for (Index n = 1; n < n_max; n += 2) dp.col(n) = -dp.col(n);
  const FockOperator kernel = dp * d.adjoint();
  return linalg::hermitian_part(kernel);
}

DisplacementSpectrum::DisplacementSpectrum(Index n_max) {
  require_dimension(n_max);
  Eigen::MatrixXd position = Eigen::MatrixXd::Zero(n_max, n_max);
  for (Index n = 1; n < n_max; ++n) {
    position(n - 1, n) = std::sqrt(static_cast<double>(n));
    position(n, n - 1) = position(n - 1, n);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(position);
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
  Eigen::MatrixXd parity_v = eigenvectors_;
  for (Index n = 1; n < n_max; n += 2) parity_v.row(n) = -parity_v.row(n);
  parity_in_eigenbasis_ = eigenvectors_.transpose() * parity_v;
}

Eigen::VectorXcd DisplacementSpectrum::phases(Complex alpha) const {
  const double theta = std::arg(alpha) + 0.5 * kPi;
  Eigen::VectorXcd t(dimension());
  for (Index n = 0; n < dimension(); ++n) t(n) = std::polar(1.0, static_cast<double>(n) * theta);
  return t;
}

FockOperator DisplacementSpectrum::displacement(Complex alpha) const {
  const Index n_max = dimension();
  require_guard_band(std::abs(alpha), n_max, "DisplacementSpectrum::displacement");
  const double r = std::abs(alpha);
  Eigen::VectorXcd e(n_max);
  for (Index k = 0; k < n_max; ++k) e(k) = std::polar(1.0, -r * eigenvalues_(k));
  const Eigen::MatrixXcd v = eigenvectors_.cast<Complex>();
  const Eigen::VectorXcd t = phases(alpha);
  return t.asDiagonal() * (v * e.asDiagonal() * v.transpose()) * t.conjugate().asDiagonal();
}

FockOperator DisplacementSpectrum::displaced_parity(Complex alpha) const {
  const Index n_max = dimension();
  require_guard_band(std::abs(alpha), n_max, "DisplacementSpectrum::displaced_parity");
  const double r = std::abs(alpha);
  // E Q E^dagger with E = diag(exp(-i r lambda))
  Eigen::MatrixXcd middle(n_max, n_max);
  for (Index l = 0; l < n_max; ++l)
    for (Index k = 0; k < n_max; ++k)
      middle(k, l) = parity_in_eigenbasis_(k, l) *
                     std::polar(1.0, -r * (eigenvalues_(k) - eigenvalues_(l)));
  const Eigen::MatrixXd& v = eigenvectors_;
  // V M V^T with real V, done as two real products per component.
  const Eigen::MatrixXd re = v * middle.real() * v.transpose();
  const Eigen::MatrixXd im = v * middle.imag() * v.transpose();
  Eigen::MatrixXcd kernel(n_max, n_max);
  kernel.real() = re;
  kernel.imag() = im;
  const Eigen::VectorXcd t = phases(alpha);
  kernel = t.asDiagonal() * kernel * t.conjugate().asDiagonal();
  return linalg::hermitian_part(kernel);
}

}  // namespace vibronic
