#include "hfscatter/potentials/assumptions.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace hfscatter::potentials {

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::not_checkable_numerically: return "not_checkable_numerically";
  }
  return "?";
}

namespace {

struct Samples {
  std::vector<double> r;    // distance from model center
  std::vector<double> v;    // V at the node
  std::vector<double> xdg;  // x.grad V at the node
  double min_v = 0.0;
  double max_abs_v = 0.0;
};

Samples collect(const PotentialModel& m, const Grid::Ptr& grid) {
  Samples s;
  const int n = grid->dim();
  s.r.reserve(grid->size());
  s.v.reserve(grid->size());
  s.xdg.reserve(grid->size());
  s.min_v = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid->size(); ++i) {
    const auto x = grid->position_point(i);
    double r2 = 0.0;
    for (int a = 0; a < n; ++a) {
      const double d = x[a] - m.center[a];
      r2 += d * d;
    }
    const double r = std::sqrt(r2);
    const double v = m.radial(r);
    s.r.push_back(r);
    s.v.push_back(v);
    s.xdg.push_back(m.x_dot_grad(x, n));
    s.min_v = std::min(s.min_v, v);
    s.max_abs_v = std::max(s.max_abs_v, std::abs(v));
  }
  return s;
}

AssumptionCheck positivity(const std::string& id, const Samples& s) {
  AssumptionCheck c{id, s.min_v >= 0.0 ? CheckStatus::pass : CheckStatus::fail, s.min_v,
                    "min sampled value"};
  return c;
}

// |x|^2 V(x) non-increasing along the radial profile.  The origin node is
// skipped: r^2 V is an indeterminate 0 x inf there for homogeneous profiles.
AssumptionCheck r2v_monotone(const std::string& id, const Samples& s) {
  std::vector<std::size_t> order;
  order.reserve(s.r.size());
  for (std::size_t i = 0; i < s.r.size(); ++i)
    if (s.r[i] > 0.0) order.push_back(i);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return s.r[a] < s.r[b]; });

  double worst = 0.0;
  double prev = std::numeric_limits<double>::infinity();
  double prev_r = -1.0;
  for (auto i : order) {
    const double cur = s.r[i] * s.r[i] * s.v[i];
    if (s.r[i] > prev_r + 1e-12) {
      const double tol = 1e-12 * std::max({1.0, std::abs(prev), std::abs(cur)});
      if (std::isfinite(prev) && cur > prev + tol) worst = std::max(worst, cur - prev);
      prev = cur;
      prev_r = s.r[i];
    } else {
      prev = std::max(prev, cur);
    }
  }
  return {id, worst == 0.0 ? CheckStatus::pass : CheckStatus::fail, worst,
          "max radial increase of |x|^2 V (origin excluded)"};
}

AssumptionCheck evenness(const std::string& id, const PotentialModel& m, const Grid::Ptr& grid) {
  const int n = grid->dim();
  double worst = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < grid->size(); ++i) {
    auto x = grid->position_point(i);
    Point mx{-x[0], -x[1], -x[2]};
    const double a = m.eval(x, n);
    const double b = m.eval(mx, n);
    worst = std::max(worst, std::abs(a - b));
    scale = std::max(scale, std::abs(a));
  }
  const double tol = 1e-14 * std::max(1.0, scale);
  return {id, worst <= tol ? CheckStatus::pass : CheckStatus::fail, worst,
          "max |V(x) - V(-x)| over nodes"};
}

AssumptionCheck homogeneity(const std::string& id, const PotentialModel& m) {
  if (m.is_zero())
    return {id, CheckStatus::pass, 0.0, "zero potential is trivially homogeneous"};
  // Fit the degree on two octaves of the radial profile and compare.
  const double v1 = m.radial(1.0), v2 = m.radial(2.0), v4 = m.radial(4.0);
  if (v1 <= 0.0 || v2 <= 0.0 || v4 <= 0.0)
    return {id, CheckStatus::fail, 0.0, "profile not strictly positive on test radii"};
  const double g1 = -std::log(v2 / v1) / std::log(2.0);
  const double g2 = -std::log(v4 / v2) / std::log(2.0);
  const double dev = std::abs(g1 - g2);
  if (dev <= 1e-6 * std::max(1.0, std::abs(g1)))
    return {id, CheckStatus::pass, g1, "fitted homogeneity degree -gamma"};
  return {id, CheckStatus::fail, dev, "degree drift between octaves (not homogeneous)"};
}

AssumptionCheck discrete_norm(const std::string& id, CheckStatus status, double value,
                              const std::string& note) {
  CheckStatus st = status;
  if (!std::isfinite(value)) st = CheckStatus::fail;
  return {id, st, value, note};
}

// sup over nodes of (1+|x|^2)^{d/2} (local L^{p0} average of V over |x-y|<=1).
AssumptionCheck local_integral_bound(const std::string& id, const PotentialModel& m,
                                     const Grid::Ptr& grid) {
  const int n = grid->dim();
  const int M = grid->points_per_axis();
  const double h = grid->spacing();
  const int reach = std::max(1, static_cast<int>(std::ceil(1.0 / h)));
  const double p0 = 0.5 * n + 0.5;
  const double d = 1.5 * n + 1.5;
  const int stride = (grid->size() > 100000) ? 2 : 1;

  double sup = 0.0;
  std::array<int, 3> off{0, 0, 0};
  for (std::size_t i = 0; i < grid->size(); i += stride) {
    const auto x = grid->position_point(i);
    double local = 0.0;
    // rectangular window |x_a - y_a| <= 1, periodic wrap
    const auto mi = grid->unravel(i);
    std::array<int, 3> om{0, 0, 0};
    const int w = 2 * reach + 1;
    std::size_t count = 1;
    for (int a = 0; a < n; ++a) count *= static_cast<std::size_t>(w);
    for (std::size_t q = 0; q < count; ++q) {
      std::size_t t = q;
      Point y{0.0, 0.0, 0.0};
      for (int a = 0; a < n; ++a) {
        om[a] = static_cast<int>(t % w) - reach;
        t /= w;
        int idx = ((mi[a] + om[a]) % M + M) % M;
        y[a] = grid->axis_positions()[idx];
      }
      (void)off;
      local += std::pow(std::abs(m.eval(y, n)), p0);
    }
    local *= grid->position_weight();
    const double x2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    sup = std::max(sup, std::pow(1.0 + x2, 0.5 * d) * std::pow(local, 1.0 / p0));
  }
  return {id, std::isfinite(sup) ? CheckStatus::pass : CheckStatus::fail, sup,
          "sup (1+|x|^2)^{d/2} local L^{p0} mass, d=3n/2+3/2, p0=n/2+1/2"};
}

double lp_norm(const Samples& s, double p, double weight) {
  double acc = 0.0;
  for (double v : s.v) acc += std::pow(std::abs(v), p);
  return std::pow(acc * weight, 1.0 / p);
}

}  // namespace

AssumptionReport validate_assumptions(const PotentialModel& model, const Grid::Ptr& grid) {
  AssumptionReport rep;
  const int n = grid->dim();
  const double w = grid->position_weight();
  Samples s = collect(model, grid);

  double sup_grad = 0.0, grad_halfn = 0.0, sup_xdg_l1 = 0.0;
  for (std::size_t i = 0; i < s.r.size(); ++i) {
    const double g = std::abs(model.radial_derivative(s.r[i]));
    sup_grad = std::max(sup_grad, g);
    grad_halfn += std::pow(g, 0.5 * n);
    sup_xdg_l1 += std::abs(s.xdg[i]);
  }
  grad_halfn = std::pow(grad_halfn * w, 2.0 / n);
  sup_xdg_l1 *= w;

  if (model.role == PotentialRole::interaction) {
    // Assumption set for the pair interaction, items 1..7.
    double c_decay = 0.0;
    for (std::size_t i = 0; i < s.r.size(); ++i)
      c_decay = std::max(c_decay, s.r[i] * s.r[i] * std::abs(s.v[i]));
    auto c1 = positivity("1.1.1", s);
    c1.note += "; decay witness C = max |x|^2 |V| = " + std::to_string(c_decay);
    rep.checks.push_back(c1);
    rep.checks.push_back(
        discrete_norm("1.1.2", CheckStatus::pass, grad_halfn, "discrete L^{n/2} norm of grad V"));
    rep.checks.push_back(discrete_norm("1.1.3", CheckStatus::not_checkable_numerically,
                                       lp_norm(s, 1.0, w),
                                       "q unbounded above; L^1 witness recorded"));
    rep.checks.push_back(discrete_norm("1.1.4", CheckStatus::not_checkable_numerically,
                                       sup_xdg_l1, "delta unbounded above; L^1 witness recorded"));
    rep.checks.push_back(evenness("1.1.5", model, grid));
    rep.checks.push_back(r2v_monotone("1.1.6", s));
    double w7 = 0.0;
    const double sexp = 0.5 * n + 0.5;
    for (std::size_t i = 0; i < s.r.size(); ++i)
      w7 = std::max(w7, std::pow(1.0 + s.r[i], 1.0 + sexp) * std::abs(s.v[i]));
    rep.checks.push_back(discrete_norm("1.1.7", CheckStatus::not_checkable_numerically, w7,
                                       "s > n/2 unbounded; witness at s = n/2 + 1/2"));
  } else {
    // Assumption set for the external potential, items 1..8.
    rep.checks.push_back(positivity("1.2.1", s));
    rep.checks.push_back(homogeneity("1.2.2", model));
    rep.checks.push_back(r2v_monotone("1.2.3", s));
    rep.checks.push_back({"1.2.4", CheckStatus::not_checkable_numerically, 0.0,
                          "zero-eigenvalue absence is a spectral fact"});
    // grad in L^inf and Laplacian in L^n, via the radial profile.
    double lap_ln = 0.0;
    const double dr = 1e-5;
    for (std::size_t i = 0; i < s.r.size(); ++i) {
      const double r = std::max(s.r[i], 1e-8);
      const double vpp =
          (model.radial_derivative(r + dr) - model.radial_derivative(std::max(r - dr, 0.0))) /
          (dr + std::min(r, dr));
      const double lap = vpp + (n - 1) * model.radial_derivative(r) / r;
      lap_ln += std::pow(std::abs(lap), n);
    }
    lap_ln = std::pow(lap_ln * w, 1.0 / n);
    rep.checks.push_back(discrete_norm("1.2.5", CheckStatus::pass,
                                       std::max(sup_grad, lap_ln),
                                       "max(sup |grad V|, discrete L^n of Laplacian)"));
    rep.checks.push_back(discrete_norm("1.2.6", CheckStatus::not_checkable_numerically,
                                       lp_norm(s, 1.0, w),
                                       "p unbounded above; L^1 witness recorded"));
    rep.checks.push_back(discrete_norm("1.2.7", CheckStatus::not_checkable_numerically,
                                       sup_xdg_l1,
                                       "beta/delta treated as one constant; L^1 witness"));
    rep.checks.push_back(local_integral_bound("1.2.8", model, grid));
  }
  return rep;
}

}  // namespace hfscatter::potentials
