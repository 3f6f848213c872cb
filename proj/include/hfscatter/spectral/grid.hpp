#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

namespace hfscatter::spectral {

/// Uniform periodic grid over [-L, L)^n with M points per axis.
///
/// Position nodes are x_m = -L + m h with h = 2L/M.  Frequency nodes are
/// xi_k = pi k / L for k = -M/2 .. M/2-1, stored ascending, so index m on an
/// axis corresponds to k = m - M/2.  Linear index runs with axis 0 fastest.
struct GridSpec {
  int dim = 1;              // n in {1,2,3}
  int points_per_axis = 8;  // M, power of two, >= 8
  double half_width = 1.0;  // L > 0

  void validate() const;  // throws std::invalid_argument on violation
};

class Grid {
 public:
  using Ptr = std::shared_ptr<const Grid>;

  static Ptr make(const GridSpec& spec);

  const GridSpec& spec() const { return spec_; }
  int dim() const { return spec_.dim; }
  int points_per_axis() const { return spec_.points_per_axis; }
  double half_width() const { return spec_.half_width; }
  double spacing() const { return h_; }
  double frequency_spacing() const { return dxi_; }
  std::size_t size() const { return size_; }

  /// Quadrature weights: h^n in position space, (pi/L)^n in frequency space.
  double position_weight() const { return pos_weight_; }
  double frequency_weight() const { return freq_weight_; }

  /// Largest representable |xi| per axis (Nyquist), pi/h.
  double max_frequency() const { return xi_max_; }

  /// Advisory time-step budget for phase rotation at the band edge, h^2/pi.
  double dt_stability_budget() const { return h_ * h_ / 3.14159265358979323846; }

  const std::vector<double>& axis_positions() const { return axis_pos_; }
  const std::vector<double>& axis_frequencies() const { return axis_freq_; }

  double position(int axis_index) const { return axis_pos_[axis_index]; }
  double frequency(int axis_index) const { return axis_freq_[axis_index]; }

  /// Decompose a linear index into per-axis indices (axis 0 fastest).
  std::array<int, 3> unravel(std::size_t linear) const {
    std::array<int, 3> m{0, 0, 0};
    const int M = spec_.points_per_axis;
    for (int a = 0; a < spec_.dim; ++a) {
      m[a] = static_cast<int>(linear % M);
      linear /= M;
    }
    return m;
  }

  std::size_t ravel(const std::array<int, 3>& m) const {
    const int M = spec_.points_per_axis;
    std::size_t idx = 0;
    for (int a = spec_.dim - 1; a >= 0; --a) idx = idx * M + m[a];
    return idx;
  }

  /// Position vector of a node.
  std::array<double, 3> position_point(std::size_t linear) const {
    auto m = unravel(linear);
    std::array<double, 3> x{0.0, 0.0, 0.0};
    for (int a = 0; a < spec_.dim; ++a) x[a] = axis_pos_[m[a]];
    return x;
  }

  /// Frequency vector of a node (natural ascending layout).
  std::array<double, 3> frequency_point(std::size_t linear) const {
    auto m = unravel(linear);
    std::array<double, 3> xi{0.0, 0.0, 0.0};
    for (int a = 0; a < spec_.dim; ++a) xi[a] = axis_freq_[m[a]];
    return xi;
  }

  double frequency_norm_sq(std::size_t linear) const {
    auto xi = frequency_point(linear);
    return xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
  }

  bool same_as(const Grid& other) const {
    return spec_.dim == other.spec_.dim &&
           spec_.points_per_axis == other.spec_.points_per_axis &&
           spec_.half_width == other.spec_.half_width;
  }

 private:
  explicit Grid(const GridSpec& spec);

  GridSpec spec_;
  double h_ = 0.0;
  double dxi_ = 0.0;
  double xi_max_ = 0.0;
  double pos_weight_ = 0.0;
  double freq_weight_ = 0.0;
  std::size_t size_ = 0;
  std::vector<double> axis_pos_;
  std::vector<double> axis_freq_;
};

/// Spec-level factory, validates and builds the node/weight tables.
Grid::Ptr make_grid(const GridSpec& spec);

}  // namespace hfscatter::spectral
