#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "gcp/percolation.hpp"

namespace gcp {

struct Crossing {
  std::size_t n_small = 0;
  std::size_t n_large = 0;
  double theta_norm = 0.0;
};

struct ThresholdEstimate {
  double theta_t = 0.0;  // normalized theta
  double uncertainty = 0.0;
  std::vector<Crossing> crossings;
};

struct CrossingOptions {
  // A grid point is in the transition window when some curve has
  // window_low < P < window_high there.
  double window_low = 0.1;
  double window_high = 0.9;
};

/// Threshold from pairwise crossings of finite-size curves.
///
/// Every pair of sizes is compared on the shared grid inside the transition
/// window; a sign change of P_a - P_b is located by linear interpolation and,
/// when noise produces several, the median location is kept. The estimate is
/// the mean over pairs, with uncertainty max(std of crossings, half grid step).
/// Pairs without a sign change are dropped; NoCrossingError if none remain.
ThresholdEstimate crossing_threshold(std::span<const PercolationCurve> curves,
                                     const CrossingOptions& options = {});

// Critical concurrence per lattice kind.
using ThresholdMap = std::map<LatticeKind, double>;

struct CollapsePoint {
  LatticeKind kind;
  std::size_t node_count;
  double x;
  double y;
};

inline constexpr double kDimension = 2.0;

// x = (c - c_th) N^{1/(d nu)},  y = P N^{beta/(d nu)}, with c = sin(pi/2 * theta_norm).
std::vector<CollapsePoint> collapse_points(std::span<const PercolationCurve> curves, double nu,
                                           double beta, const ThresholdMap& c_th);

struct CollapseOptions {
  // Only points with |x| <= x_window enter the cost.
  std::optional<double> x_window;
};

/// Collapse quality: mean squared distance of each transformed point from
/// the average of the other curves' piecewise-linear interpolants at the same
/// x, over points where at least one other curve overlaps. Curves are only
/// compared with curves of the same lattice kind. A single curve costs 0.
double collapse_cost(std::span<const PercolationCurve> curves, double nu, double beta,
                     const ThresholdMap& c_th, const CollapseOptions& options = {});
double collapse_cost(std::span<const PercolationCurve> curves, double nu, double beta,
                     double c_th, const CollapseOptions& options = {});

struct ScalingFit {
  double nu = 0.0;
  double beta = 0.0;
  ThresholdMap c_th;
  double cost = 0.0;
  double d = kDimension;
};

struct FitOptions {
  double nu_min = 0.8, nu_max = 2.0, nu_step = 0.02;
  double beta_min = 0.0, beta_max = 0.4, beta_step = 0.005;
  CollapseOptions collapse;
};

// Grid search over (nu, beta) followed by Nelder-Mead refinement with c_th
// held fixed. FitError on fewer than 3 curves, a single system size, or a
// non-finite cost.
ScalingFit fit_exponents(std::span<const PercolationCurve> curves, const ThresholdMap& c_th,
                         const FitOptions& options = {});

// Same, but c_th is also refined (single lattice kind only), starting from
// the given value.
ScalingFit fit_exponents_and_threshold(std::span<const PercolationCurve> curves, double c_th_start,
                                       const FitOptions& options = {});

// Thresholds for every lattice kind present, from crossing_threshold on
// each kind's curves, converted to concurrence.
ThresholdMap crossing_thresholds_by_kind(std::span<const PercolationCurve> curves,
                                         const CrossingOptions& options = {});

}  // namespace gcp
