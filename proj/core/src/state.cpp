#include "vibronic/state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace vibronic {

VibronicDensity::VibronicDensity(Index n_max) {
  require_dimension(n_max);
  for (auto& b : blocks) b = FockOperator::Zero(n_max, n_max);
}

double VibronicDensity::trace() const {
  return block(kLevel1, kLevel1).trace().real() + block(kLevel2, kLevel2).trace().real();
}

Eigen::MatrixXcd VibronicDensity::assembled() const {
  const Index n = dimension();
  Eigen::MatrixXcd full(2 * n, 2 * n);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) full.block(i * n, j * n, n, n) = block(i, j);
  return full;
}

VibronicDensity VibronicDensity::from_assembled(const Eigen::MatrixXcd& full, Index n_max,
                                                Normalization normalization) {
  if (full.rows() != 2 * n_max || full.cols() != 2 * n_max) {
    throw Error(ErrorCode::invalid_dimension, "assembled operator is not 2N x 2N");
  }
  VibronicDensity s(n_max);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) s.block(i, j) = full.block(i * n_max, j * n_max, n_max, n_max);
  s.normalization = normalization;
  return s;
}

bool StateDiagnostics::ok(Normalization normalization, double trace_tol) const {
  if (hermiticity > 1e-12) return false;
  if (min_eigenvalue < -1e-10) return false;
  if (normalization == Normalization::unit) return std::abs(trace - 1.0) <= trace_tol;
  return trace <= 1.0 + trace_tol;
}

StateDiagnostics diagnose(const VibronicDensity& state) {
  StateDiagnostics d;
  d.hermiticity = linalg::hermiticity_defect(state.assembled());
  d.trace = state.trace();
  d.min_eigenvalue = linalg::min_eigenvalue(state.assembled());
  return d;
}

void validate(const VibronicDensity& state) {
  const StateDiagnostics d = diagnose(state);
  if (!d.ok(state.normalization)) {
    throw Error(ErrorCode::invalid_state,
                "hermiticity " + std::to_string(d.hermiticity) + ", trace " +
                    std::to_string(d.trace) + ", min eigenvalue " +
                    std::to_string(d.min_eigenvalue));
  }
}

double motional_amplitude(const VibronicDensity& state) {
  const FockOperator rho = reduce_motional(state);
  double mean = 0.0;
  for (Index n = 0; n < rho.rows(); ++n) mean += static_cast<double>(n) * rho(n, n).real();
  const double tr = rho.trace().real();
  if (tr <= 0.0) return 0.0;
  return std::sqrt(std::max(0.0, mean / tr));
}

VibronicDensity make_pure_state(const FockVector& level1, const FockVector& level2) {
  if (level1.size() != level2.size()) {
    throw Error(ErrorCode::invalid_dimension, "component vectors differ in length");
  }
  VibronicDensity s(level1.size());
  const std::array<const FockVector*, 2> parts = {&level1, &level2};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) s.block(i, j) = (*parts[i]) * parts[j]->adjoint();
  return s;
}

VibronicDensity make_cat_state(Complex beta, Index n_max) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const FockVector plus = coherent_state(beta, n_max);
  const FockVector minus = coherent_state(-beta, n_max);
  return make_pure_state(-inv_sqrt2 * minus, inv_sqrt2 * plus);
}

VibronicDensity make_product_state(const FockOperator& rho, const ElectronicDensity& sigma) {
  require_dimension(rho.rows());
  if (rho.rows() != rho.cols()) throw Error(ErrorCode::invalid_state, "rho is not square");
  if (linalg::hermiticity_defect(rho) > 1e-12 || std::abs(rho.trace() - 1.0) > 1e-10 ||
      linalg::min_eigenvalue(rho) < -1e-10) {
    throw Error(ErrorCode::invalid_state, "motional marginal is not a density operator");
  }
  if (linalg::hermiticity_defect(sigma) > 1e-12 || std::abs(sigma.trace() - 1.0) > 1e-12 ||
      linalg::min_eigenvalue(sigma) < -1e-12) {
    throw Error(ErrorCode::invalid_state, "electronic marginal is not a density operator");
  }
  VibronicDensity s(rho.rows());
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) s.block(i, j) = sigma(i, j) * rho;
  return s;
}

FockOperator reduce_motional(const VibronicDensity& state) {
  return state.block(kLevel1, kLevel1) + state.block(kLevel2, kLevel2);
}

ElectronicDensity reduce_electronic(const VibronicDensity& state) {
  ElectronicDensity sigma;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) sigma(i, j) = state.block(i, j).trace();
  return sigma;
}

FockOperator condition_on_superposition(const VibronicDensity& state,
                                        const ElectronicVector& psi) {
  if (std::abs(psi.norm() - 1.0) > 1e-12) {
    throw Error(ErrorCode::invalid_argument, "electronic superposition must have unit norm");
  }
  const Index n = state.dimension();
  FockOperator out = FockOperator::Zero(n, n);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out += std::conj(psi(i)) * psi(j) * state.block(i, j);
  return out;
}

VibronicDensity displace_state(const VibronicDensity& state, Complex alpha) {
  const Index n = state.dimension();
  require_guard_band(motional_amplitude(state) + std::abs(alpha), n, "displace_state");
  const FockOperator d = displacement_operator(alpha, n);
  VibronicDensity out(n);
  out.normalization = state.normalization;
  for (std::size_t k = 0; k < 4; ++k) out.blocks[k] = d.adjoint() * state.blocks[k] * d;
  return out;
}

double NumberStatistics::completeness_deficit() const {
  double retained = 0.0;
  for (const auto& v : values) retained += v(0, 0).real() + v(1, 1).real();
  return total_trace - retained;
}

namespace {

void require_statistics_range(const VibronicDensity& state, Complex alpha, Index n_stat) {
  const Index n = state.dimension();
  if (n_stat < 1 || n_stat > n) {
    throw Error(ErrorCode::invalid_argument,
                "N_stat must lie in [1, N_max], got " + std::to_string(n_stat));
  }
  require_guard_band(motional_amplitude(state) + std::abs(alpha), n,
                     "displaced_number_statistics");
}

NumberStatistics statistics_from_displacement(const VibronicDensity& state, Complex alpha,
                                              Index n_stat, const FockOperator& d) {
  NumberStatistics stats;
  stats.alpha = alpha;
  stats.values.assign(static_cast<std::size_t>(n_stat), Eigen::Matrix2cd::Zero());
  stats.total_trace = state.trace();
  // <n| D^dagger rho_ij D |n> = (D e_n)^dagger (rho_ij D e_n)
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const FockOperator applied = state.block(i, j) * d.leftCols(n_stat);
      for (Index k = 0; k < n_stat; ++k) {
        stats.values[static_cast<std::size_t>(k)](i, j) = d.col(k).dot(applied.col(k));
      }
    }
  }
  for (auto& v : stats.values) {
    v(0, 0) = v(0, 0).real();
    v(1, 1) = v(1, 1).real();
    v(1, 0) = std::conj(v(0, 1));
  }
  return stats;
}

}  // namespace

NumberStatistics displaced_number_statistics(const VibronicDensity& state, Complex alpha,
                                             Index n_stat) {
  require_statistics_range(state, alpha, n_stat);
  return statistics_from_displacement(state, alpha, n_stat,
                                      displacement_operator(alpha, state.dimension()));
}

NumberStatistics displaced_number_statistics(const VibronicDensity& state, Complex alpha,
                                             Index n_stat, const DisplacementSpectrum& spectrum) {
  if (spectrum.dimension() != state.dimension()) {
    throw Error(ErrorCode::invalid_dimension, "displacement spectrum and state differ in N_max");
  }
  require_statistics_range(state, alpha, n_stat);
  return statistics_from_displacement(state, alpha, n_stat, spectrum.displacement(alpha));
}

Index statistics_cutoff(const NumberStatistics& stats, double tail) {
  double remaining = stats.total_trace;
  for (Index k = 0; k < stats.size(); ++k) {
    const auto& v = stats.values[static_cast<std::size_t>(k)];
    remaining -= v(0, 0).real() + v(1, 1).real();
    if (remaining < tail) return k + 1;
  }
  return stats.size();
}

}  // namespace vibronic
