#pragma once

#include <cstdint>

#include "gcp/paths.hpp"

namespace gcp {

/// Normalized entanglement angle (pi/4)^-1 * theta, in [0, 1].
/// 1 is a singlet, 0 a product state.
class ThetaNorm {
 public:
  explicit ThetaNorm(double value);
  double value() const { return value_; }
  double radians() const;

 private:
  double value_;
};

/// Concurrence of a two-qubit pure state, in [0, 1].
class Concurrence {
 public:
  explicit Concurrence(double value);
  double value() const { return value_; }

 private:
  double value_;
};

/// Probability that singlet conversion succeeds, in [0, 1].
class SingletProb {
 public:
  explicit SingletProb(double value);
  double value() const { return value_; }

 private:
  double value_;
};

// Values within this distance outside [0, 1] are clamped instead of rejected.
inline constexpr double kBoundaryTolerance = 1e-12;

// c = sin(2 theta)
Concurrence concurrence_of_theta(ThetaNorm t);
// Inverse of concurrence_of_theta on theta in [0, pi/4].
ThetaNorm theta_of_concurrence(Concurrence c);
// p = 2 sin^2(theta)
SingletProb singlet_prob_of_theta(ThetaNorm t);
// p = 1 - sqrt(1 - c^2), the same map expressed through the concurrence.
SingletProb singlet_prob_of_concurrence(Concurrence c);

// Entanglement swapping along a chain of `length` identical links: c^length.
Concurrence series_concurrence(Concurrence c, std::uint32_t length);

// Distillation of `count` identical parallel links. With
// q = ((1 + sqrt(1 - c^2)) / 2)^count, the result satisfies
// (1 + sqrt(1 - c'^2)) / 2 = max(1/2, q); it saturates at 1 once q <= 1/2.
Concurrence parallel_concurrence(Concurrence c, std::uint64_t count);

// Swap along each shortest path, then distill the parallel results.
Concurrence gcp_pair_concurrence(Concurrence edge, PathSummary paths);

}  // namespace gcp
