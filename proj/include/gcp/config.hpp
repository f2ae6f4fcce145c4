#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "gcp/lattice.hpp"
#include "gcp/percolation.hpp"

namespace gcp {

struct GridSpec {
  double min = 0.0;
  double max = 1.0;
  std::size_t points = 101;
};

struct RunConfig {
  LatticeKind kind = LatticeKind::Square;
  std::vector<int> sizes;
  Protocol protocol = Protocol::GCP;
  GridSpec grid;
  std::uint64_t ensembles = 1000;
  std::uint64_t seed = 42;
  std::filesystem::path out = "runs";
  unsigned workers = 0;
};

// Throws DomainError naming the first violated constraint.
void validate(const RunConfig& config);

/// Flat TOML subset for run files: `key = value` lines with strings,
/// integers, floats, booleans and one-line arrays; `#` comments; an optional
/// `[sweep]` table. Anything else is rejected.
using TomlValue = std::variant<std::string, std::int64_t, double, bool, std::vector<std::int64_t>>;
std::map<std::string, TomlValue> parse_toml_subset(const std::string& text);

// Applies recognized keys (lattice, sizes, protocol, theta_min, theta_max,
// points, ensembles, seed, out, workers) onto `config`. Unknown keys throw.
void apply_toml(RunConfig& config, const std::map<std::string, TomlValue>& values);

}  // namespace gcp
