#pragma once

#include <array>
#include <string>

#include "hfscatter/spectral/field.hpp"

namespace hfscatter::potentials {

using Point = std::array<double, 3>;
using spectral::ComplexField;
using spectral::Grid;

enum class PotentialKind { zero, gaussian, smoothed_inverse_power, compact_bump };
enum class PotentialRole { interaction, external };

const char* to_string(PotentialKind k);
PotentialKind kind_from_string(const std::string& s);

/// Parametric radial potential.  width_or_power is the Gaussian width sigma,
/// the bump support radius, or the inverse-power degree gamma depending on
/// kind; epsilon regularizes the inverse-power family as (eps^2+|x|^2)^{-g/2}.
struct PotentialModel {
  PotentialKind kind = PotentialKind::zero;
  double amplitude = 0.0;       // A >= 0
  double width_or_power = 1.0;  // sigma | support radius | gamma
  Point center{0.0, 0.0, 0.0};  // interaction role must be centered
  PotentialRole role = PotentialRole::interaction;
  double epsilon = 1.0;  // smoothing for smoothed_inverse_power

  void validate() const;  // throws on violated model invariants
  bool is_zero() const { return kind == PotentialKind::zero || amplitude == 0.0; }

  /// Pointwise value V(x); dim trims the coordinates used.
  double eval(const Point& x, int dim) const;

  /// x . grad V(x), used by the pseudo-conformal dissipation functional.
  double x_dot_grad(const Point& x, int dim) const;

  /// Radial profile value and derivative at distance r from the center.
  double radial(double r) const;
  double radial_derivative(double r) const;

  /// Samples V on the grid, optionally translated by `offset` (V(x+offset)).
  ComplexField sample(const Grid::Ptr& grid, const Point& offset = {0.0, 0.0, 0.0}) const;

  /// Closed-form Fourier transform on the frequency grid, paper convention
  /// (2 pi)^{-n/2}.  Supported kinds: zero, gaussian; otherwise throws.
  ComplexField analytic_fourier(const Grid::Ptr& grid) const;

  bool has_analytic_fourier() const {
    return kind == PotentialKind::zero || kind == PotentialKind::gaussian;
  }

  /// Effective support radius for window sizing: radius beyond which the
  /// profile is below 1e-12 of its peak.
  double support_radius() const;
};

/// Line-integral quadrature parameters for the numeric X-ray transform.
struct XrayQuadrature {
  double half_length = 20.0;  // integrate closest-approach +/- half_length
  int samples = 2001;         // composite Simpson node count (odd)
  double tail_tol = 1e-10;    // bound on the neglected tail
};

/// Closed-form X-ray transform \int V(x_perp + t theta) dt.
/// Supported kinds: zero, gaussian; otherwise throws.
double xray_analytic(const PotentialModel& model, const Point& x_perp, const Point& theta,
                     int dim);

/// Composite-Simpson line integral; throws if the truncated tail estimate
/// exceeds rule.tail_tol.
double xray_numeric(const PotentialModel& model, const Point& x_perp, const Point& theta, int dim,
                    const XrayQuadrature& rule = {});

}  // namespace hfscatter::potentials
