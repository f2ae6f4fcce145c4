#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gcp/lattice.hpp"

namespace gcp {

/// Shortest-path length (edges) and number of distinct shortest paths.
/// The self pair has length 0 and count 1.
struct PathSummary {
  std::uint32_t length = 0;
  std::uint64_t count = 1;
  friend bool operator==(const PathSummary&, const PathSummary&) = default;
};

// Exact binomial coefficient; throws OverflowError past 64 bits.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

// Closed forms on the open square / triangular grids. Coordinates must lie
// in [0, side) on both axes, otherwise DomainError.
PathSummary shortest_square(Coord s, Coord t, int side);
PathSummary shortest_triangular(Coord s, Coord t, int side);

// Breadth-first distances and shortest-path counts from `source` to every
// node, indexed by NodeId.
std::vector<PathSummary> bfs_path_counts(const Lattice& lattice, NodeId source);

// Canonical index of the unordered pair {u, v}, u != v, among the
// N(N-1)/2 pairs enumerated as (0,1), (0,2), ..., (1,2), ...
inline std::uint64_t pair_index(NodeId u, NodeId v, std::size_t n) {
  if (u > v) std::swap(u, v);
  const std::uint64_t a = u;
  return a * n - a * (a + 1) / 2 + (v - u - 1);
}

struct PairPath {
  NodeId u = 0;  // u < v
  NodeId v = 0;
  PathSummary path;
};

/// Path summaries for unordered node pairs of one lattice, in canonical
/// pair order. Lookup is symmetric in its arguments.
class PathTable {
 public:
  PathTable(LatticeKind kind, int lattice_size, std::size_t node_count,
            std::vector<PairPath> entries);

  LatticeKind kind() const { return kind_; }
  int lattice_size() const { return lattice_size_; }
  std::size_t node_count() const { return node_count_; }
  const std::vector<PairPath>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  // nullopt for self pairs and for pairs dropped by subsampling.
  std::optional<PathSummary> find(NodeId u, NodeId v) const;
  bool matches(const Lattice& lattice) const;

 private:
  LatticeKind kind_;
  int lattice_size_;
  std::size_t node_count_;
  std::vector<PairPath> entries_;
  std::vector<std::int64_t> slot_;  // pair_index -> entry position or -1
};

struct PairSampling {
  double fraction = 1.0;  // keep each pair with this probability
  std::uint64_t seed = 0;
};

// Closed forms for square/triangular, BFS for hexagonal. With a sampling
// fraction below 1 only a seeded random subset of pairs is kept.
PathTable all_pairs_paths(const Lattice& lattice, PairSampling sampling = {});

}  // namespace gcp
