#include "hfscatter/potentials/potential_model.hpp"

#include <cmath>
#include <stdexcept>

namespace hfscatter::potentials {

namespace {
constexpr double kPi = 3.14159265358979323846;
// exp(-r^2 / (2 sigma^2)) drops below 1e-12 at r = sigma * sqrt(2 ln 1e12).
const double kGaussReach = std::sqrt(2.0 * std::log(1e12));
}  // namespace

const char* to_string(PotentialKind k) {
  switch (k) {
    case PotentialKind::zero: return "zero";
    case PotentialKind::gaussian: return "gaussian";
    case PotentialKind::smoothed_inverse_power: return "smoothed_inverse_power";
    case PotentialKind::compact_bump: return "compact_bump";
  }
  return "?";
}

PotentialKind kind_from_string(const std::string& s) {
  if (s == "zero") return PotentialKind::zero;
  if (s == "gaussian") return PotentialKind::gaussian;
  if (s == "smoothed_inverse_power") return PotentialKind::smoothed_inverse_power;
  if (s == "compact_bump") return PotentialKind::compact_bump;
  throw std::invalid_argument("unknown potential kind: " + s);
}

void PotentialModel::validate() const {
  if (amplitude < 0.0) throw std::invalid_argument("PotentialModel: amplitude must be >= 0");
  if (role == PotentialRole::interaction) {
    if (center[0] != 0.0 || center[1] != 0.0 || center[2] != 0.0)
      throw std::invalid_argument("PotentialModel: interaction potential must be centered");
  }
  if (kind != PotentialKind::zero && !(width_or_power > 0.0))
    throw std::invalid_argument("PotentialModel: width_or_power must be positive");
  if (kind == PotentialKind::smoothed_inverse_power && !(epsilon > 0.0))
    throw std::invalid_argument("PotentialModel: smoothed_inverse_power needs epsilon > 0");
}

double PotentialModel::radial(double r) const {
  switch (kind) {
    case PotentialKind::zero:
      return 0.0;
    case PotentialKind::gaussian: {
      const double s = width_or_power;
      return amplitude * std::exp(-0.5 * r * r / (s * s));
    }
    case PotentialKind::smoothed_inverse_power: {
      const double g = width_or_power;
      return amplitude * std::pow(epsilon * epsilon + r * r, -0.5 * g);
    }
    case PotentialKind::compact_bump: {
      const double w = width_or_power;
      if (r >= w) return 0.0;
      return amplitude * std::exp(1.0 - w * w / (w * w - r * r));
    }
  }
  return 0.0;
}

double PotentialModel::radial_derivative(double r) const {
  switch (kind) {
    case PotentialKind::zero:
      return 0.0;
    case PotentialKind::gaussian: {
      const double s = width_or_power;
      return -r / (s * s) * radial(r);
    }
    case PotentialKind::smoothed_inverse_power: {
      const double g = width_or_power;
      return -g * r / (epsilon * epsilon + r * r) * radial(r);
    }
    case PotentialKind::compact_bump: {
      const double w = width_or_power;
      if (r >= w) return 0.0;
      const double d = w * w - r * r;
      return radial(r) * (-2.0 * w * w * r / (d * d));
    }
  }
  return 0.0;
}

double PotentialModel::eval(const Point& x, int dim) const {
  double r2 = 0.0;
  for (int a = 0; a < dim; ++a) {
    const double d = x[a] - center[a];
    r2 += d * d;
  }
  return radial(std::sqrt(r2));
}

double PotentialModel::x_dot_grad(const Point& x, int dim) const {
  double r2 = 0.0, xdotd = 0.0;
  for (int a = 0; a < dim; ++a) {
    const double d = x[a] - center[a];
    r2 += d * d;
    xdotd += x[a] * d;
  }
  const double r = std::sqrt(r2);
  if (r == 0.0) return 0.0;
  return radial_derivative(r) * xdotd / r;
}

ComplexField PotentialModel::sample(const Grid::Ptr& grid, const Point& offset) const {
  ComplexField out(grid, spectral::Space::position);
  const int n = grid->dim();
  for (std::size_t i = 0; i < out.size(); ++i) {
    Point x = grid->position_point(i);
    for (int a = 0; a < n; ++a) x[a] += offset[a];
    out[i] = eval(x, n);
  }
  return out;
}

ComplexField PotentialModel::analytic_fourier(const Grid::Ptr& grid) const {
  const int n = grid->dim();
  ComplexField out(grid, spectral::Space::frequency);
  switch (kind) {
    case PotentialKind::zero:
      return out;
    case PotentialKind::gaussian: {
      const double s = width_or_power;
      const double pref = amplitude * std::pow(s, n);
      for (std::size_t i = 0; i < out.size(); ++i) {
        const auto xi = grid->frequency_point(i);
        double k2 = 0.0, kc = 0.0;
        for (int a = 0; a < n; ++a) {
          k2 += xi[a] * xi[a];
          kc += xi[a] * center[a];
        }
        out[i] = pref * std::exp(-0.5 * s * s * k2) * std::polar(1.0, -kc);
      }
      return out;
    }
    default:
      throw std::runtime_error(std::string("analytic_fourier: no closed form for kind '") +
                               to_string(kind) + "'; sample and use fourier()");
  }
}

double PotentialModel::support_radius() const {
  switch (kind) {
    case PotentialKind::zero: return 0.0;
    case PotentialKind::gaussian: return width_or_power * kGaussReach;
    case PotentialKind::smoothed_inverse_power: {
      // (eps^2+r^2)^{-g/2} falls to 1e-12 of the peak at r ~ eps*1e^{12/g}.
      const double g = width_or_power;
      return epsilon * std::pow(1e12, 1.0 / g);
    }
    case PotentialKind::compact_bump: return width_or_power;
  }
  return 0.0;
}

double xray_analytic(const PotentialModel& model, const Point& x_perp, const Point& theta,
                     int dim) {
  switch (model.kind) {
    case PotentialKind::zero:
      return 0.0;
    case PotentialKind::gaussian: {
      const double s = model.width_or_power;
      double d2 = 0.0, proj = 0.0;
      for (int a = 0; a < dim; ++a) {
        const double r = x_perp[a] - model.center[a];
        d2 += r * r;
        proj += r * theta[a];
      }
      d2 -= proj * proj;  // squared distance of the line to the center
      return model.amplitude * s * std::sqrt(2.0 * kPi) * std::exp(-0.5 * d2 / (s * s));
    }
    default:
      throw std::runtime_error(std::string("xray_analytic: no closed form for kind '") +
                               to_string(model.kind) + "'");
  }
}

double xray_numeric(const PotentialModel& model, const Point& x_perp, const Point& theta, int dim,
                    const XrayQuadrature& rule) {
  if (rule.samples < 3 || rule.samples % 2 == 0)
    throw std::invalid_argument("xray_numeric: samples must be odd and >= 3");

  // Center the window at the line's closest approach to the potential.
  double t0 = 0.0;
  for (int a = 0; a < dim; ++a) t0 += (model.center[a] - x_perp[a]) * theta[a];

  const double a0 = t0 - rule.half_length;
  const double b0 = t0 + rule.half_length;
  const double dt = (b0 - a0) / (rule.samples - 1);

  auto f = [&](double t) {
    Point x = x_perp;
    for (int a = 0; a < dim; ++a) x[a] += t * theta[a];
    return model.eval(x, dim);
  };

  const double fa = f(a0), fb = f(b0);
  const double tail_estimate = (std::abs(fa) + std::abs(fb)) * rule.half_length;
  if (tail_estimate > rule.tail_tol)
    throw std::runtime_error("xray_numeric: truncated tail estimate " +
                             std::to_string(tail_estimate) + " exceeds tolerance");

  double sum = fa + fb;
  for (int i = 1; i < rule.samples - 1; ++i) sum += f(a0 + i * dt) * (i % 2 ? 4.0 : 2.0);
  return sum * dt / 3.0;
}

}  // namespace hfscatter::potentials
