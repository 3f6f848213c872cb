#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hfscatter/probe/probe.hpp"

namespace hfscatter::inversion {

using dynamics::GaussianState;
using probe::KernelConfig;
using spectral::Complex;
using spectral::ComplexField;
using spectral::Grid;

/// Discretization of the first-kind equation
///   S_lim(lambda) = int Vhat_int(xi) H_j(xi, lambda) dxi
/// as a (lambda x xi) matrix with the frequency quadrature weights folded in.
/// Columns are restricted to the band where the kernel is not numerically
/// zero; outside it they only inflate the conditioning.
struct FirstKindOperator {
  std::vector<double> lambda_grid;
  std::vector<std::size_t> xi_nodes;  // retained frequency-grid indices
  double xi_weight = 0.0;             // uniform quadrature weight
  Eigen::MatrixXcd matrix;            // rows: lambda, cols: retained xi
  Grid::Ptr grid;
  int orbital = 0;

  /// Scatters a retained-band vector onto the full frequency grid.
  ComplexField embed(const Eigen::VectorXcd& band_values) const;

  /// Gathers a full frequency field onto the retained band.
  Eigen::VectorXcd restrict(const ComplexField& vhat) const;
};

FirstKindOperator assemble_T(const std::vector<GaussianState>& base, const Grid::Ptr& grid,
                             int orbital, double base_lambda,
                             const std::vector<double>& lambda_grid, const KernelConfig& kcfg,
                             double band_threshold = 1e-8);

/// Singular system {mu_n, phi_n, g_n}: T phi_n = mu_n g_n, T* g_n = mu_n phi_n.
struct SingularSystem {
  Eigen::VectorXd mu;    // non-increasing
  Eigen::MatrixXcd phi;  // right vectors, xi-space columns
  Eigen::MatrixXcd g;    // left vectors, lambda-space columns
  double verification_residual = 0.0;  // max defect of the defining relations
};

SingularSystem singular_system(const FirstKindOperator& T);
SingularSystem singular_system(const Eigen::MatrixXcd& matrix);

enum class TruncationRule { fixed_rank, discrepancy, ratio_cutoff };

struct TruncationSpec {
  TruncationRule rule = TruncationRule::discrepancy;
  int fixed_rank = 0;
  double delta = 0.0;   // discrepancy level
  double ratio = 1e-8;  // keep mu_n > ratio * mu_1
};

struct PicardDiagnostics {
  std::vector<Complex> coefficients;  // <slim, g_n>
  std::vector<double> ratios;         // |coef_n| / mu_n
  std::vector<double> partial_sums;   // cumulative sum of ratios^2
  int truncation_index = 0;           // retained mode count n*
};

struct PicardResult {
  Eigen::VectorXcd vhat_band;  // estimate on the retained xi band
  PicardDiagnostics diagnostics;
};

/// Truncated Picard series  sum_{n < n*} mu_n^{-1} <slim, g_n> phi_n.
PicardResult picard_reconstruct(const SingularSystem& sys, const Eigen::VectorXcd& slim,
                                const TruncationSpec& rule);

struct PositionEstimate {
  ComplexField field;          // position space
  double imaginary_fraction;   // max |Im| / max |Re|, band-truncation gauge
};

/// Zero-fills the band estimate onto the frequency grid and inverts.
PositionEstimate vint_from_vhat(const FirstKindOperator& T, const Eigen::VectorXcd& vhat_band);

}  // namespace hfscatter::inversion
