#include "hfscatter/inversion/first_kind.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

#include "hfscatter/spectral/fourier.hpp"

namespace hfscatter::inversion {

using spectral::Space;

ComplexField FirstKindOperator::embed(const Eigen::VectorXcd& band_values) const {
  if (static_cast<std::size_t>(band_values.size()) != xi_nodes.size())
    throw std::invalid_argument("FirstKindOperator::embed: size mismatch");
  ComplexField out(grid, Space::frequency);
  for (std::size_t k = 0; k < xi_nodes.size(); ++k) out[xi_nodes[k]] = band_values[k];
  return out;
}

Eigen::VectorXcd FirstKindOperator::restrict(const ComplexField& vhat) const {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(xi_nodes.size()));
  for (std::size_t k = 0; k < xi_nodes.size(); ++k) out[k] = vhat[xi_nodes[k]];
  return out;
}

FirstKindOperator assemble_T(const std::vector<GaussianState>& base, const Grid::Ptr& grid,
                             int orbital, double base_lambda,
                             const std::vector<double>& lambda_grid, const KernelConfig& kcfg,
                             double band_threshold) {
  if (lambda_grid.empty()) throw std::invalid_argument("assemble_T: empty lambda grid");

  std::vector<ComplexField> kernels;
  kernels.reserve(lambda_grid.size());
  double max_abs = 0.0;
  for (double lam : lambda_grid) {
    kernels.push_back(probe::kernel_H(base, grid, orbital, base_lambda + lam, kcfg));
    max_abs = std::max(max_abs, spectral::sup_norm(kernels.back()));
  }

  FirstKindOperator T;
  T.lambda_grid = lambda_grid;
  T.grid = grid;
  T.orbital = orbital;
  T.xi_weight = grid->frequency_weight();

  const double thresh = band_threshold * max_abs;
  for (std::size_t q = 0; q < grid->size(); ++q) {
    for (const auto& H : kernels) {
      if (std::abs(H[q]) > thresh) {
        T.xi_nodes.push_back(q);
        break;
      }
    }
  }
  if (T.xi_nodes.empty()) {
    // zero kernel (e.g. N = 1): keep a single column so the operator exists
    T.xi_nodes.push_back(grid->size() / 2);
  }

  T.matrix.resize(static_cast<Eigen::Index>(lambda_grid.size()),
                  static_cast<Eigen::Index>(T.xi_nodes.size()));
  for (Eigen::Index m = 0; m < T.matrix.rows(); ++m)
    for (Eigen::Index k = 0; k < T.matrix.cols(); ++k)
      T.matrix(m, k) = kernels[static_cast<std::size_t>(m)][T.xi_nodes[static_cast<std::size_t>(k)]] * T.xi_weight;
  return T;
}

SingularSystem singular_system(const Eigen::MatrixXcd& matrix) {
  if (!matrix.allFinite()) throw std::invalid_argument("singular_system: non-finite entries");
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(matrix, Eigen::ComputeThinU | Eigen::ComputeThinV);

  SingularSystem sys;
  sys.mu = svd.singularValues();
  sys.g = svd.matrixU();
  sys.phi = svd.matrixV();

  // verify T phi_n = mu_n g_n, T* g_n = mu_n phi_n, and orthonormality
  const Eigen::MatrixXcd t_phi = matrix * sys.phi;
  const Eigen::MatrixXcd ta_g = matrix.adjoint() * sys.g;
  double worst = 0.0;
  for (Eigen::Index k = 0; k < sys.mu.size(); ++k) {
    worst = std::max(worst, (t_phi.col(k) - sys.mu[k] * sys.g.col(k)).norm());
    worst = std::max(worst, (ta_g.col(k) - sys.mu[k] * sys.phi.col(k)).norm());
  }
  const Eigen::Index r = sys.mu.size();
  worst = std::max(worst, (sys.phi.adjoint() * sys.phi - Eigen::MatrixXcd::Identity(r, r))
                              .cwiseAbs()
                              .maxCoeff());
  worst = std::max(worst, (sys.g.adjoint() * sys.g - Eigen::MatrixXcd::Identity(r, r))
                              .cwiseAbs()
                              .maxCoeff());
  sys.verification_residual = worst;
  return sys;
}

SingularSystem singular_system(const FirstKindOperator& T) { return singular_system(T.matrix); }

PicardResult picard_reconstruct(const SingularSystem& sys, const Eigen::VectorXcd& slim,
                                const TruncationSpec& rule) {
  const Eigen::Index n_modes = sys.mu.size();
  if (slim.size() != sys.g.rows())
    throw std::invalid_argument("picard_reconstruct: data length mismatch");

  const double mu0 = n_modes > 0 ? sys.mu[0] : 0.0;
  if (!(mu0 > 1e-14))
    throw std::runtime_error("picard_reconstruct: operator numerically rank-0");

  PicardResult out;
  auto& diag = out.diagnostics;
  diag.coefficients.resize(static_cast<std::size_t>(n_modes));
  diag.ratios.resize(static_cast<std::size_t>(n_modes));
  diag.partial_sums.resize(static_cast<std::size_t>(n_modes));

  // numerically meaningful modes only; below this the ratios are noise
  const double mu_floor = 1e-13 * mu0;
  Eigen::Index usable = 0;
  double running = 0.0;
  for (Eigen::Index k = 0; k < n_modes; ++k) {
    const Complex c = sys.g.col(k).dot(slim);  // <slim, g_k>
    diag.coefficients[static_cast<std::size_t>(k)] = c;
    const double ratio = sys.mu[k] > mu_floor ? std::abs(c) / sys.mu[k] : 0.0;
    diag.ratios[static_cast<std::size_t>(k)] = ratio;
    running += ratio * ratio;
    diag.partial_sums[static_cast<std::size_t>(k)] = running;
    if (sys.mu[k] > mu_floor) usable = k + 1;
  }

  Eigen::Index n_star = usable;
  switch (rule.rule) {
    case TruncationRule::fixed_rank:
      n_star = std::min<Eigen::Index>(usable, rule.fixed_rank);
      break;
    case TruncationRule::ratio_cutoff: {
      Eigen::Index k = 0;
      while (k < usable && sys.mu[k] > rule.ratio * mu0) ++k;
      n_star = k;
      break;
    }
    case TruncationRule::discrepancy: {
      // smallest n* with || slim - sum_{k<n*} c_k g_k || <= delta
      double res2 = slim.squaredNorm();
      Eigen::Index k = 0;
      while (k < usable && res2 > rule.delta * rule.delta) {
        res2 -= std::norm(diag.coefficients[static_cast<std::size_t>(k)]);
        ++k;
      }
      n_star = k;
      break;
    }
  }
  diag.truncation_index = static_cast<int>(n_star);

  out.vhat_band = Eigen::VectorXcd::Zero(sys.phi.rows());
  for (Eigen::Index k = 0; k < n_star; ++k)
    out.vhat_band += (diag.coefficients[static_cast<std::size_t>(k)] / sys.mu[k]) * sys.phi.col(k);
  return out;
}

PositionEstimate vint_from_vhat(const FirstKindOperator& T, const Eigen::VectorXcd& vhat_band) {
  ComplexField vhat = T.embed(vhat_band);
  PositionEstimate out{spectral::inverse_fourier(vhat), 0.0};
  double max_re = 0.0, max_im = 0.0;
  for (const auto& v : out.field.values()) {
    max_re = std::max(max_re, std::abs(v.real()));
    max_im = std::max(max_im, std::abs(v.imag()));
  }
  out.imaginary_fraction = max_re > 0.0 ? max_im / max_re : 0.0;
  return out;
}

}  // namespace hfscatter::inversion
