#include "vibronic/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vibronic/parallel.hpp"

namespace vibronic {
namespace {

// Tr[a b] without forming the product.
Complex trace_of_product(const FockOperator& a, const FockOperator& b) {
  return a.cwiseProduct(b.transpose()).sum();
}

WignerSample sample_from_kernel(const VibronicDensity& state, const FockOperator& kernel,
                                Complex alpha) {
  WignerSample s;
  s.alpha = alpha;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      s.w(i, j) = kWignerPrefactor * trace_of_product(state.block(i, j), kernel);
  s.w(0, 0) = s.w(0, 0).real();
  s.w(1, 1) = s.w(1, 1).real();
  s.w(1, 0) = std::conj(s.w(0, 1));
  return s;
}

bool on_boundary(const PhaseSpaceGrid& grid, Index k) {
  const Index ir = k % grid.n_re;
  const Index ii = k / grid.n_re;
  return ir == 0 || ir == grid.n_re - 1 || ii == 0 || ii == grid.n_im - 1;
}

double edge_ratio(const WignerField& field) {
  double edge = 0.0;
  double peak = 0.0;
  for (Index k = 0; k < field.grid.size(); ++k) {
    const double m = field.samples[static_cast<std::size_t>(k)].w.cwiseAbs().maxCoeff();
    peak = std::max(peak, m);
    if (on_boundary(field.grid, k)) edge = std::max(edge, m);
  }
  return peak > 0.0 ? edge / peak : 0.0;
}

void require_matching(const WignerField& field) {
  field.grid.validate();
  if (static_cast<Index>(field.samples.size()) != field.grid.size()) {
    throw Error(ErrorCode::grid_mismatch, "sample count " + std::to_string(field.samples.size()) +
                                              " does not match grid size " +
                                              std::to_string(field.grid.size()));
  }
}

}  // namespace

double PhaseSpaceGrid::re_step() const {
  return n_re > 1 ? (re_max - re_min) / static_cast<double>(n_re - 1) : 0.0;
}

double PhaseSpaceGrid::im_step() const {
  return n_im > 1 ? (im_max - im_min) / static_cast<double>(n_im - 1) : 0.0;
}

Complex PhaseSpaceGrid::point(Index k) const {
  const Index ir = k % n_re;
  const Index ii = k / n_re;
  const double re = n_re > 1 ? re_min + static_cast<double>(ir) * re_step() : re_min;
  const double im = n_im > 1 ? im_min + static_cast<double>(ii) * im_step() : im_min;
  return {re, im};
}

double PhaseSpaceGrid::max_amplitude() const {
  const double re = std::max(std::abs(re_min), std::abs(re_max));
  const double im = std::max(std::abs(im_min), std::abs(im_max));
  return std::hypot(re, im);
}

void PhaseSpaceGrid::validate() const {
  auto axis = [](const char* name, double lo, double hi, Index n) {
    if (n < 1) throw Error(ErrorCode::invalid_argument, std::string(name) + " count must be >= 1");
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
      throw Error(ErrorCode::invalid_argument, std::string(name) + " bounds must be finite");
    }
    if (n == 1 && lo != hi) {
      throw Error(ErrorCode::invalid_argument,
                  std::string(name) + " with a single point needs min == max");
    }
    if (n > 1 && !(hi > lo)) {
      throw Error(ErrorCode::invalid_argument, std::string(name) + " must be strictly increasing");
    }
  };
  axis("re axis", re_min, re_max, n_re);
  axis("im axis", im_min, im_max, n_im);
}

PhaseSpaceGrid PhaseSpaceGrid::square(double half_width, Index points) {
  return {-half_width, half_width, points, -half_width, half_width, points};
}

double wigner_scalar(const FockOperator& rho, Complex alpha) {
  const Index n = rho.rows();
  double mean = 0.0;
  for (Index k = 0; k < n; ++k) mean += static_cast<double>(k) * rho(k, k).real();
  require_guard_band(std::sqrt(std::max(0.0, mean)) + std::abs(alpha), n, "wigner_scalar");
  const Complex value = kWignerPrefactor * trace_of_product(rho, displaced_parity(alpha, n));
  if (std::abs(value.imag()) > 1e-10) {
    throw Error(ErrorCode::invalid_argument,
                "Wigner function has imaginary part " + std::to_string(value.imag()) +
                    "; operator is not hermitian");
  }
  return value.real();
}

WignerSample wigner_matrix_exact(const VibronicDensity& state, Complex alpha) {
  const Index n = state.dimension();
  require_guard_band(motional_amplitude(state) + std::abs(alpha), n, "wigner_matrix_exact");
  return sample_from_kernel(state, displaced_parity(alpha, n), alpha);
}

WignerField exact_field(const VibronicDensity& state, const PhaseSpaceGrid& grid,
                        unsigned threads) {
  grid.validate();
  const Index n = state.dimension();
  require_guard_band(motional_amplitude(state) + grid.max_amplitude(), n, "exact_field");
  const DisplacementSpectrum spectrum(n);
  WignerField field{grid, std::vector<WignerSample>(static_cast<std::size_t>(grid.size()))};
  parallel_for(field.samples.size(), threads, [&](std::size_t k) {
    const Complex alpha = grid.point(static_cast<Index>(k));
    field.samples[k] = sample_from_kernel(state, spectrum.displaced_parity(alpha), alpha);
  });
  return field;
}

WignerSample wigner_from_number_statistics(const NumberStatistics& stats, double tail_tolerance) {
  const double deficit = stats.completeness_deficit();
  if (deficit > tail_tolerance) {
    throw Error(ErrorCode::series_truncation,
                "retained statistics miss occupation " + std::to_string(deficit) +
                    " > tolerance " + std::to_string(tail_tolerance));
  }
  WignerSample s;
  s.alpha = stats.alpha;
  Eigen::Matrix2cd sum = Eigen::Matrix2cd::Zero();
  for (std::size_t n = 0; n < stats.values.size(); ++n) {
    if (n % 2 == 0) {
      sum += stats.values[n];
    } else {
      sum -= stats.values[n];
    }
  }
  s.w = kWignerPrefactor * sum;
  s.w(1, 0) = std::conj(s.w(0, 1));
  return s;
}

double wigner_reduced(const WignerSample& sample) {
  return (sample.w(0, 0) + sample.w(1, 1)).real();
}

double wigner_conditioned(const WignerSample& sample, const ElectronicVector& psi) {
  if (std::abs(psi.norm() - 1.0) > 1e-12) {
    throw Error(ErrorCode::invalid_argument, "electronic superposition must have unit norm");
  }
  const Complex value = psi.dot(sample.w * psi);
  return value.real();
}

ElectronicMarginal integrate_field(const WignerField& field, double edge_threshold) {
  require_matching(field);
  const PhaseSpaceGrid& g = field.grid;
  const double area = g.cell_area();

  ElectronicMarginal out;
  Eigen::Matrix2cd coarse = Eigen::Matrix2cd::Zero();
  Eigen::Matrix2d ring = Eigen::Matrix2d::Zero();
  for (Index k = 0; k < g.size(); ++k) {
    const Eigen::Matrix2cd& w = field.samples[static_cast<std::size_t>(k)].w;
    out.sigma += w * area;
    const Index ir = k % g.n_re;
    const Index ii = k / g.n_re;
    if (ir % 2 == 0 && ii % 2 == 0) coarse += w * (4.0 * area);
    if (on_boundary(g, k)) ring += w.cwiseAbs() * area;
  }

  const bool refinable = g.n_re >= 3 && g.n_im >= 3;
  const double refinement = refinable ? (out.sigma - coarse).cwiseAbs().maxCoeff() : 0.0;
  out.quadrature_error = refinement + ring.maxCoeff();
  out.edge_ratio = edge_ratio(field);
  if (area <= 0.0) {
    out.coverage_ok = false;
    out.warning = "insufficient-coverage: grid has zero cell area";
  } else if (out.edge_ratio > edge_threshold) {
    out.coverage_ok = false;
    out.warning = "insufficient-coverage: boundary carries " + std::to_string(out.edge_ratio) +
                  " of the peak magnitude";
  }
  return out;
}

Reconstruction invert_to_density(const WignerField& field, Index n_max, unsigned threads) {
  require_matching(field);
  require_dimension(n_max);
  const PhaseSpaceGrid& g = field.grid;
  require_guard_band(g.max_amplitude(), n_max, "invert_to_density");

  const DisplacementSpectrum spectrum(n_max);
  const double weight = 2.0 * g.cell_area();
  // Per-row partial sums keep the reduction order fixed for any thread count.
  std::vector<std::array<FockOperator, 4>> rows(static_cast<std::size_t>(g.n_im));
  parallel_for(rows.size(), threads, [&](std::size_t row) {
    auto& acc = rows[row];
    for (auto& b : acc) b = FockOperator::Zero(n_max, n_max);
    for (Index ir = 0; ir < g.n_re; ++ir) {
      const Index k = static_cast<Index>(row) * g.n_re + ir;
      const WignerSample& s = field.samples[static_cast<std::size_t>(k)];
      if (s.w.cwiseAbs().maxCoeff() == 0.0) continue;
      const FockOperator kernel = spectrum.displaced_parity(g.point(k));
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          acc[static_cast<std::size_t>(2 * i + j)] += (weight * s.w(i, j)) * kernel;
    }
  });

  Reconstruction out{VibronicDensity(n_max), 0, true, {}};
  for (const auto& acc : rows)
    for (std::size_t b = 0; b < 4; ++b) out.state.blocks[b] += acc[b];
  const double reach = std::max(0.0, std::sqrt(static_cast<double>(n_max)) - g.max_amplitude());
  out.reliable_dimension = std::min(n_max, static_cast<Index>(std::floor(reach * reach)));

  std::string warning;
  if (g.re_step() > 0.125 || g.im_step() > 0.125) {
    warning += "grid spacing exceeds 0.125; ";
  }
  const double edge = edge_ratio(field);
  if (edge > 1e-3) warning += "grid boundary carries " + std::to_string(edge) + " of the peak; ";
  if (!warning.empty()) {
    out.quality_ok = false;
    out.warning = "inversion-quality-warning: " + warning;
  }
  return out;
}

WignerSample analytic_cat_wigner(Complex beta, Complex alpha) {
  WignerSample s;
  s.alpha = alpha;
  const double inv_pi = 1.0 / kPi;
  s.w(0, 0) = inv_pi * std::exp(-2.0 * std::norm(alpha + beta));
  s.w(1, 1) = inv_pi * std::exp(-2.0 * std::norm(alpha - beta));
  const double phase = 4.0 * (alpha * std::conj(beta)).imag();
  s.w(0, 1) = -inv_pi * std::exp(-2.0 * std::norm(alpha)) * std::polar(1.0, phase);
  s.w(1, 0) = std::conj(s.w(0, 1));
  return s;
}

}  // namespace vibronic
