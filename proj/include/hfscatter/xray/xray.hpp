#pragma once

#include <string>
#include <vector>

#include "hfscatter/inversion/slim.hpp"
#include "hfscatter/probe/probe.hpp"

namespace hfscatter::xray {

using dynamics::PotentialModel;
using probe::ProbeConfig;
using spectral::Complex;
using spectral::ComplexField;
using spectral::Grid;

/// Parallel-beam line-integral data g(theta, s) on a shared uniform offset
/// grid per perpendicular axis.  Directions are half-sphere representatives;
/// antipodal pairs carry weight 2 in all direction quadratures (line
/// integrals are orientation-free).
struct Sinogram {
  int dim = 2;  // ambient dimension, 2 or 3
  std::vector<std::array<double, 3>> directions;
  int offset_count = 0;
  double offset_spacing = 0.0;
  std::vector<std::vector<double>> values;  // [direction][flattened offsets]

  double offset(int i) const { return (i - offset_count / 2) * offset_spacing; }
  std::size_t plane_size() const;
  double direction_weight() const;  // |S^{n-1}| / direction count

  /// Orthonormal basis of theta^perp (one vector for n=2, two for n=3).
  static std::array<double, 3> perp1(const std::array<double, 3>& theta);
  static std::array<double, 3> perp2(const std::array<double, 3>& theta);
};

/// Uniform half-circle (n=2) or Fibonacci half-sphere (n=3) directions.
std::vector<std::array<double, 3>> make_directions(int dim, int count);

Sinogram make_sinogram(int dim, int n_directions, int offset_count, double offset_half_width);

/// Exact sinogram of a model potential via the analytic (or numeric) X-ray.
Sinogram forward_xray(const PotentialModel& model, int dim, int n_directions, int offset_count,
                      double offset_half_width);

/// Back-projection (X* g)(x) = int_{S^{n-1}} g(theta, x - (theta.x) theta).
ComplexField xray_adjoint(const Sinogram& g, const Grid::Ptr& grid);

/// Full-space Riesz potential I^a f = F^{-1}(|xi|^{-a} fhat), |a| < n.
/// For a > 0 the zero mode is dropped and its mean reported.
struct RieszResult {
  ComplexField field;
  double removed_mean = 0.0;
};
RieszResult riesz(const ComplexField& f, double a);

/// Periodic Riesz filter on a flat offset profile (the hyperplane operator
/// I^{a}_{alpha-perp}); dim_line is 1 for n=2 slices, 2 for n=3 planes.
std::vector<double> riesz_profile(const std::vector<double>& values, int count_per_axis,
                                  double spacing, double a, int dim_line);

struct InversionOutput {
  ComplexField field;
  double restored_mean = 0.0;
  std::vector<std::string> warnings;
};

/// f = (2 pi |S^{n-2}|)^{-1} I^{-a} X* I^{a-1}_line g.  The zero mode is
/// restored from the sinogram's zeroth moment (every projection integrates
/// to the same mass), which keeps all a on the same constant.
InversionOutput invert_xray(const Sinogram& g, const Grid::Ptr& grid, double a);

/// Extraction of one X-ray profile of V_ext from high-velocity probes along
/// v-hat: Richardson limit of w_v, division by phi_j where it is resolvable,
/// and averaging over lines parallel to v-hat.
struct SliceConfig {
  double dt = 1.0 / 128.0;
  double eps_div_rel = 1e-3;  // mask threshold relative to max |phi_j|
  int offset_count = 64;
  double offset_half_width = 0.0;  // 0: use half of the grid half-width
  double tail_tol = 1e-4;
};

struct SliceResult {
  std::vector<double> offsets;
  std::vector<double> profile;
  double masked_fraction = 0.0;
};

SliceResult extract_xray_slice(const ProbeConfig& cfg, const Grid::Ptr& grid, int orbital,
                               const PotentialModel& v_int, const PotentialModel& v_ext,
                               const SliceConfig& scfg);

/// Synthetic-mode pipeline: extract slices over a direction set, assemble the
/// sinogram, invert, and compare against the phantom on the unmasked region.
struct PipelineConfig {
  int directions = 32;
  double riesz_a = 0.0;
  SliceConfig slice;
  int threads = 1;
};

struct VextRecovery {
  Sinogram sinogram;
  ComplexField estimate;
  double relative_l2_error = 0.0;  // vs phantom, on |phi_j| >= eps_div
  double masked_fraction = 0.0;
  std::vector<std::string> warnings;
};

VextRecovery full_vext_pipeline(const ProbeConfig& cfg, const Grid::Ptr& grid, int orbital,
                                const PotentialModel& v_int, const PotentialModel& v_ext,
                                const PipelineConfig& pcfg);

}  // namespace hfscatter::xray
