#include "gcp/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "gcp/errors.hpp"

namespace gcp {

namespace {

double checked_unit(double v, const char* what) {
  if (!(v >= -kBoundaryTolerance && v <= 1.0 + kBoundaryTolerance))
    throw DomainError(std::string(what) + " must lie in [0, 1], got " + std::to_string(v));
  return std::clamp(v, 0.0, 1.0);
}

}  // namespace

ThetaNorm::ThetaNorm(double value) : value_(checked_unit(value, "normalized theta")) {}
double ThetaNorm::radians() const { return value_ * std::numbers::pi / 4.0; }

Concurrence::Concurrence(double value) : value_(checked_unit(value, "concurrence")) {}
SingletProb::SingletProb(double value) : value_(checked_unit(value, "singlet probability")) {}

Concurrence concurrence_of_theta(ThetaNorm t) {
  return Concurrence(std::sin(2.0 * t.radians()));
}

ThetaNorm theta_of_concurrence(Concurrence c) {
  return ThetaNorm(std::asin(c.value()) / 2.0 / (std::numbers::pi / 4.0));
}

SingletProb singlet_prob_of_theta(ThetaNorm t) {
  const double s = std::sin(t.radians());
  return SingletProb(2.0 * s * s);
}

SingletProb singlet_prob_of_concurrence(Concurrence c) {
  const double c2 = c.value() * c.value();
  // 1 - sqrt(1 - c^2) == c^2 / (1 + sqrt(1 - c^2)); the latter keeps precision
  // for small c.
  return SingletProb(c2 / (1.0 + std::sqrt(1.0 - c2)));
}

Concurrence series_concurrence(Concurrence c, std::uint32_t length) {
  if (length < 1) throw DomainError("series rule needs a path length >= 1");
  return Concurrence(std::pow(c.value(), static_cast<double>(length)));
}

Concurrence parallel_concurrence(Concurrence c, std::uint64_t count) {
  if (count < 1) throw DomainError("parallel rule needs a path count >= 1");
  if (count == 1) return c;
  const double c2 = c.value() * c.value();
  // log of (1 + sqrt(1 - c^2)) / 2, written as log1p(-deficit) for small c
  const double log_term = std::log1p(-c2 / (2.0 * (1.0 + std::sqrt(1.0 - c2))));
  const double log_product = static_cast<double>(count) * log_term;
  if (log_product <= -std::numbers::ln2) return Concurrence(1.0);
  // r = 2 * product - 1; 1 - r = -2 * expm1(log_product)
  const double one_minus_r = -2.0 * std::expm1(log_product);
  const double r = 1.0 - one_minus_r;
  return Concurrence(std::sqrt(std::max(0.0, one_minus_r * (1.0 + r))));
}

Concurrence gcp_pair_concurrence(Concurrence edge, PathSummary paths) {
  return parallel_concurrence(series_concurrence(edge, paths.length), paths.count);
}

}  // namespace gcp
