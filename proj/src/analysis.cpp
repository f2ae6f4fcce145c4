#include "gcp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <set>

#include "gcp/entanglement.hpp"
#include "gcp/errors.hpp"

namespace gcp {

namespace {

void require_shared_grid(std::span<const PercolationCurve> curves) {
  const auto& ref = curves.front();
  for (const auto& c : curves) {
    if (c.kind != ref.kind) throw ConsistencyError("curves mix lattice kinds");
    if (c.points.size() != ref.points.size())
      throw ConsistencyError("curves are sampled on different theta grids");
    for (std::size_t i = 0; i < c.points.size(); ++i)
      if (std::abs(c.points[i].theta_norm - ref.points[i].theta_norm) > 1e-12)
        throw ConsistencyError("curves are sampled on different theta grids");
  }
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const auto m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

ThresholdEstimate crossing_threshold(std::span<const PercolationCurve> curves,
                                     const CrossingOptions& options) {
  if (curves.size() < 2) throw DomainError("crossing analysis needs at least two curves");
  require_shared_grid(curves);
  {
    std::set<std::size_t> sizes;
    for (const auto& c : curves) sizes.insert(c.node_count);
    if (sizes.size() != curves.size()) throw ConsistencyError("curves must have distinct sizes");
  }

  const auto& grid = curves.front().points;
  const std::size_t g = grid.size();
  if (g < 2) throw DomainError("crossing analysis needs at least two grid points");

  // Contiguous transition window [first, last].
  std::size_t first = g, last = 0;
  for (std::size_t i = 0; i < g; ++i) {
    const bool in = std::any_of(curves.begin(), curves.end(), [&](const PercolationCurve& c) {
      return c.points[i].p_mean > options.window_low && c.points[i].p_mean < options.window_high;
    });
    if (in) {
      first = std::min(first, i);
      last = i;
    }
  }
  if (first == g) throw NoCrossingError("no curve passes through the transition window");

  double half_step = 0.0;
  for (std::size_t i = first; i < std::min(last + 1, g - 1); ++i)
    half_step = std::max(half_step, 0.5 * (grid[i + 1].theta_norm - grid[i].theta_norm));
  if (half_step == 0.0) half_step = 0.5 * (grid[1].theta_norm - grid[0].theta_norm);

  // Order by size so results do not depend on input order.
  std::vector<const PercolationCurve*> sorted;
  for (const auto& c : curves) sorted.push_back(&c);
  std::sort(sorted.begin(), sorted.end(),
            [](auto* a, auto* b) { return a->node_count < b->node_count; });

  ThresholdEstimate est;
  bool all_identical = true;
  for (std::size_t a = 0; a < sorted.size(); ++a) {
    for (std::size_t b = a + 1; b < sorted.size(); ++b) {
      std::vector<double> diff(g);
      for (std::size_t i = 0; i < g; ++i)
        diff[i] = sorted[a]->points[i].p_mean - sorted[b]->points[i].p_mean;
      std::vector<double> found;
      bool identical = true;
      for (std::size_t i = first; i <= last; ++i) {
        const double t0 = grid[i].theta_norm;
        if (diff[i] != 0.0) identical = false;
        if (diff[i] == 0.0) {
          found.push_back(t0);
        } else if (i < last && diff[i] * diff[i + 1] < 0.0) {
          const double t1 = grid[i + 1].theta_norm;
          found.push_back(t0 + (t1 - t0) * diff[i] / (diff[i] - diff[i + 1]));
        }
      }
      if (identical) continue;
      all_identical = false;
      if (found.empty()) continue;
      est.crossings.push_back({sorted[a]->node_count, sorted[b]->node_count, median(found)});
    }
  }
  if (all_identical) throw DegenerateCrossingError("curves coincide across the transition window");
  if (est.crossings.empty()) throw NoCrossingError("no pair of curves changes order in the window");

  double sum = 0.0;
  for (const auto& c : est.crossings) sum += c.theta_norm;
  est.theta_t = sum / static_cast<double>(est.crossings.size());
  double ss = 0.0;
  for (const auto& c : est.crossings) ss += (c.theta_norm - est.theta_t) * (c.theta_norm - est.theta_t);
  const double spread = std::sqrt(ss / static_cast<double>(est.crossings.size()));
  est.uncertainty = std::max(spread, half_step);
  return est;
}

ThresholdMap crossing_thresholds_by_kind(std::span<const PercolationCurve> curves,
                                         const CrossingOptions& options) {
  std::map<LatticeKind, std::vector<PercolationCurve>> groups;
  for (const auto& c : curves) groups[c.kind].push_back(c);
  ThresholdMap out;
  for (const auto& [kind, group] : groups) {
    const auto est = crossing_threshold(group, options);
    out[kind] = concurrence_of_theta(ThetaNorm(est.theta_t)).value();
  }
  return out;
}

std::vector<CollapsePoint> collapse_points(std::span<const PercolationCurve> curves, double nu,
                                           double beta, const ThresholdMap& c_th) {
  if (!(nu > 0.0)) throw DomainError("nu must be positive");
  std::vector<CollapsePoint> out;
  for (const auto& curve : curves) {
    const auto it = c_th.find(curve.kind);
    if (it == c_th.end())
      throw ConsistencyError("no critical concurrence given for " + std::string(to_string(curve.kind)));
    const double n = static_cast<double>(curve.node_count);
    const double x_scale = std::pow(n, 1.0 / (kDimension * nu));
    const double y_scale = std::pow(n, beta / (kDimension * nu));
    for (const auto& p : curve.points) {
      const double c = std::sin(std::numbers::pi / 2.0 * p.theta_norm);
      out.push_back({curve.kind, curve.node_count, (c - it->second) * x_scale, p.p_mean * y_scale});
    }
  }
  return out;
}

namespace {

struct Transformed {
  std::vector<double> x, y;  // x increasing
};

// Piecewise-linear interpolation; x must lie within [xs.front(), xs.back()].
double interpolate(const Transformed& t, double x) {
  auto it = std::lower_bound(t.x.begin(), t.x.end(), x);
  if (it == t.x.begin()) return t.y.front();
  const auto i = static_cast<std::size_t>(it - t.x.begin());
  if (i == t.x.size()) return t.y.back();
  const double x0 = t.x[i - 1], x1 = t.x[i];
  if (x1 == x0) return t.y[i];
  return t.y[i - 1] + (t.y[i] - t.y[i - 1]) * (x - x0) / (x1 - x0);
}

}  // namespace

double collapse_cost(std::span<const PercolationCurve> curves, double nu, double beta,
                     const ThresholdMap& c_th, const CollapseOptions& options) {
  if (!(nu > 0.0)) throw DomainError("nu must be positive");
  if (curves.empty()) throw DomainError("collapse needs at least one curve");

  std::map<LatticeKind, std::vector<Transformed>> groups;
  for (const auto& curve : curves) {
    const auto pts = collapse_points(std::span(&curve, 1), nu, beta, c_th);
    Transformed t;
    for (const auto& p : pts) {
      t.x.push_back(p.x);
      t.y.push_back(p.y);
    }
    groups[curve.kind].push_back(std::move(t));
  }

  double sum = 0.0;
  std::size_t count = 0;
  bool comparable = false;
  for (const auto& [kind, group] : groups) {
    if (group.size() < 2) continue;
    comparable = true;
    for (std::size_t i = 0; i < group.size(); ++i) {
      for (std::size_t j = 0; j < group[i].x.size(); ++j) {
        const double x = group[i].x[j];
        if (options.x_window && std::abs(x) > *options.x_window) continue;
        double master = 0.0;
        int overlaps = 0;
        for (std::size_t k = 0; k < group.size(); ++k) {
          if (k == i || group[k].x.empty()) continue;
          if (x < group[k].x.front() || x > group[k].x.back()) continue;
          master += interpolate(group[k], x);
          ++overlaps;
        }
        if (overlaps == 0) continue;
        const double dev = group[i].y[j] - master / overlaps;
        sum += dev * dev;
        ++count;
      }
    }
  }
  if (!comparable) return 0.0;
  if (count == 0) throw InsufficientOverlapError("transformed curves do not overlap in x");
  return sum / static_cast<double>(count);
}

double collapse_cost(std::span<const PercolationCurve> curves, double nu, double beta, double c_th,
                     const CollapseOptions& options) {
  ThresholdMap m;
  for (const auto& c : curves) m[c.kind] = c_th;
  return collapse_cost(curves, nu, beta, m, options);
}

namespace {

using Objective = std::function<double(const std::vector<double>&)>;

// Downhill simplex with the standard reflection/expansion/contraction/shrink
// coefficients (1, 2, 1/2, 1/2).
std::vector<double> nelder_mead(const Objective& f, std::vector<double> start,
                                const std::vector<double>& steps, int max_iter = 2000,
                                double tol = 1e-12) {
  const std::size_t dim = start.size();
  std::vector<std::vector<double>> simplex{start};
  for (std::size_t i = 0; i < dim; ++i) {
    auto v = start;
    v[i] += steps[i];
    simplex.push_back(v);
  }
  std::vector<double> values;
  for (const auto& v : simplex) values.push_back(f(v));

  auto affine = [&](const std::vector<double>& a, const std::vector<double>& b, double t) {
    std::vector<double> r(dim);
    for (std::size_t i = 0; i < dim; ++i) r[i] = a[i] + t * (b[i] - a[i]);
    return r;
  };

  for (int iter = 0; iter < max_iter; ++iter) {
    std::vector<std::size_t> order(dim + 1);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
    const auto best = order.front(), worst = order.back(), second = order[dim - 1];
    if (std::abs(values[worst] - values[best]) <= tol * (std::abs(values[best]) + tol)) break;

    std::vector<double> centroid(dim, 0.0);
    for (std::size_t k = 0; k <= dim; ++k)
      if (k != worst)
        for (std::size_t i = 0; i < dim; ++i) centroid[i] += simplex[k][i] / static_cast<double>(dim);

    const auto reflected = affine(centroid, simplex[worst], -1.0);
    const double fr = f(reflected);
    if (fr < values[best]) {
      const auto expanded = affine(centroid, simplex[worst], -2.0);
      const double fe = f(expanded);
      if (fe < fr) {
        simplex[worst] = expanded;
        values[worst] = fe;
      } else {
        simplex[worst] = reflected;
        values[worst] = fr;
      }
    } else if (fr < values[second]) {
      simplex[worst] = reflected;
      values[worst] = fr;
    } else {
      const auto contracted = affine(centroid, simplex[worst], 0.5);
      const double fc = f(contracted);
      if (fc < values[worst]) {
        simplex[worst] = contracted;
        values[worst] = fc;
      } else {
        for (std::size_t k = 0; k <= dim; ++k) {
          if (k == best) continue;
          simplex[k] = affine(simplex[best], simplex[k], 0.5);
          values[k] = f(simplex[k]);
        }
      }
    }
  }
  const auto best = static_cast<std::size_t>(
      std::min_element(values.begin(), values.end()) - values.begin());
  return simplex[best];
}

void require_fit_input(std::span<const PercolationCurve> curves) {
  if (curves.size() < 3) throw FitError("exponent fit needs at least three curves");
  std::set<std::size_t> sizes;
  for (const auto& c : curves) sizes.insert(c.node_count);
  if (sizes.size() < 2) throw FitError("exponent fit needs more than one system size");
}

}  // namespace

ScalingFit fit_exponents(std::span<const PercolationCurve> curves, const ThresholdMap& c_th,
                         const FitOptions& options) {
  require_fit_input(curves);

  double best_cost = std::numeric_limits<double>::infinity();
  double best_nu = options.nu_min, best_beta = options.beta_min;
  const auto nu_steps = static_cast<int>(std::lround((options.nu_max - options.nu_min) / options.nu_step));
  const auto beta_steps =
      static_cast<int>(std::lround((options.beta_max - options.beta_min) / options.beta_step));
  for (int i = 0; i <= nu_steps; ++i) {
    const double nu = options.nu_min + i * options.nu_step;
    for (int j = 0; j <= beta_steps; ++j) {
      const double beta = options.beta_min + j * options.beta_step;
      const double cost = collapse_cost(curves, nu, beta, c_th, options.collapse);
      if (!std::isfinite(cost)) throw FitError("collapse cost is not finite");
      if (cost < best_cost) {
        best_cost = cost;
        best_nu = nu;
        best_beta = beta;
      }
    }
  }

  // Outside the physical region the objective is +inf so the simplex stays put.
  const Objective f = [&](const std::vector<double>& v) {
    if (v[0] <= 0.05 || v[1] < 0.0) return std::numeric_limits<double>::infinity();
    try {
      return collapse_cost(curves, v[0], v[1], c_th, options.collapse);
    } catch (const InsufficientOverlapError&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  auto refined = nelder_mead(f, {best_nu, best_beta}, {options.nu_step, options.beta_step});
  const double refined_cost = f(refined);

  ScalingFit fit{best_nu, best_beta, c_th, best_cost, kDimension};
  if (refined_cost < best_cost) {
    fit.nu = refined[0];
    fit.beta = refined[1];
    fit.cost = refined_cost;
  }
  if (!std::isfinite(fit.cost)) throw FitError("collapse cost is not finite");
  return fit;
}

ScalingFit fit_exponents_and_threshold(std::span<const PercolationCurve> curves, double c_th_start,
                                       const FitOptions& options) {
  require_fit_input(curves);
  const auto kind = curves.front().kind;
  for (const auto& c : curves)
    if (c.kind != kind) throw ConsistencyError("joint threshold fit needs a single lattice kind");

  const auto start = fit_exponents(curves, ThresholdMap{{kind, c_th_start}}, options);
  const Objective f = [&](const std::vector<double>& v) {
    if (v[0] <= 0.05 || v[1] < 0.0 || v[2] < 0.0 || v[2] > 1.0)
      return std::numeric_limits<double>::infinity();
    try {
      return collapse_cost(curves, v[0], v[1], v[2], options.collapse);
    } catch (const InsufficientOverlapError&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  const auto v = nelder_mead(f, {start.nu, start.beta, c_th_start},
                             {options.nu_step, options.beta_step, 0.01});
  const double cost = f(v);
  if (!(cost < start.cost)) return start;
  return ScalingFit{v[0], v[1], ThresholdMap{{kind, v[2]}}, cost, kDimension};
}

}  // namespace gcp
