#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gcp/entanglement.hpp"
#include "gcp/lattice.hpp"
#include "gcp/paths.hpp"

namespace gcp {

enum class Protocol { GCP, CEP };

std::string_view to_string(Protocol p);
std::optional<Protocol> parse_protocol(std::string_view name);

struct ProbabilisticEdge {
  NodeId u = 0;  // u < v
  NodeId v = 0;
  std::uint64_t pair = 0;  // canonical pair index, shared by both protocols
  double probability = 0.0;
};

/// Singlet-conversion probabilities for one lattice at one theta.
/// GCP: one entry per node pair in the path table. CEP: one per lattice edge.
struct ProbabilisticEdgeSet {
  Protocol protocol = Protocol::GCP;
  std::size_t node_count = 0;
  std::vector<ProbabilisticEdge> edges;
};

// Throws ConsistencyError if the table was built for another lattice.
ProbabilisticEdgeSet build_edge_probs(const Lattice& lattice, const PathTable& table, ThetaNorm t,
                                      Protocol protocol);

// Largest connected component size over node_count.
double giant_fraction(std::size_t node_count, std::span<const Edge> edges);

struct CurvePoint {
  double theta_norm = 0.0;
  double p_mean = 0.0;
  double p_stderr = 0.0;
};

/// Giant-component fraction P against normalized theta for one lattice.
struct PercolationCurve {
  LatticeKind kind = LatticeKind::Square;
  std::size_t node_count = 0;
  Protocol protocol = Protocol::GCP;
  std::uint64_t ensembles = 0;
  std::uint64_t seed = 0;
  std::vector<CurvePoint> points;
};

struct SweepOptions {
  std::uint64_t ensembles = 1000;
  std::uint64_t seed = 0;
  unsigned workers = 0;  // 0: hardware concurrency
};

// n uniform points on [lo, hi]; n == 1 gives {lo}.
std::vector<double> uniform_grid(double lo, double hi, std::size_t n);

// Samples every (theta, ensemble) cell independently. The uniform draw used
// for a pair depends only on (seed, theta index, ensemble index, pair index),
// so results do not depend on the worker count, and GCP/CEP sweeps with the
// same seed are coupled pair by pair.
PercolationCurve sweep(const Lattice& lattice, const PathTable& table, Protocol protocol,
                       std::span<const double> grid, const SweepOptions& options);

// One sampled giant fraction; exposed for tests.
double sample_giant_fraction(const ProbabilisticEdgeSet& set, std::uint64_t seed,
                             std::uint32_t theta_index, std::uint32_t ensemble_index);

}  // namespace gcp
