#include "gcp/paths.hpp"

#include <cstdlib>
#include <limits>
#include <queue>
#include <string>

#include "gcp/errors.hpp"
#include "gcp/rng.hpp"

namespace gcp {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // result * (n - k + i) / i is exact at every step: it equals C(n-k+i, i).
    result = result * (n - k + i) / i;
    if (result > std::numeric_limits<std::uint64_t>::max())
      throw OverflowError("binomial C(" + std::to_string(n) + "," + std::to_string(k) +
                          ") exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(result);
}

namespace {

void require_on_grid(Coord c, int side) {
  if (c.x < 0 || c.y < 0 || c.x >= side || c.y >= side)
    throw DomainError("coordinate (" + std::to_string(c.x) + "," + std::to_string(c.y) +
                      ") is off the " + std::to_string(side) + "x" + std::to_string(side) +
                      " lattice");
}

}  // namespace

PathSummary shortest_square(Coord s, Coord t, int side) {
  require_on_grid(s, side);
  require_on_grid(t, side);
  const auto dx = static_cast<std::uint64_t>(std::abs(s.x - t.x));
  const auto dy = static_cast<std::uint64_t>(std::abs(s.y - t.y));
  return {static_cast<std::uint32_t>(dx + dy), binomial(dx + dy, dx)};
}

PathSummary shortest_triangular(Coord s, Coord t, int side) {
  require_on_grid(s, side);
  require_on_grid(t, side);
  if (s.x > t.x) std::swap(s, t);
  // Diagonals run (x,y)-(x+1,y+1); they only help when t is up-right of s.
  if (s.y >= t.y) return shortest_square(s, t, side);
  const auto dx = static_cast<std::uint64_t>(t.x - s.x);
  const auto dy = static_cast<std::uint64_t>(t.y - s.y);
  const auto diag = std::min(dx, dy);
  const auto length = std::max(dx, dy);
  return {static_cast<std::uint32_t>(length), binomial(length, diag)};
}

std::vector<PathSummary> bfs_path_counts(const Lattice& lattice, NodeId source) {
  const auto n = lattice.node_count();
  if (source >= n) throw DomainError("source node " + std::to_string(source) + " not on lattice");

  constexpr auto unseen = std::numeric_limits<std::uint32_t>::max();
  std::vector<PathSummary> out(n, PathSummary{unseen, 0});
  out[source] = {0, 1};
  std::queue<NodeId> frontier;
  frontier.push(source);
  while (!frontier.empty()) {
    const NodeId u = frontier.front();
    frontier.pop();
    for (NodeId v : lattice.neighbors(u)) {
      if (out[v].length == unseen) {
        out[v].length = out[u].length + 1;
        frontier.push(v);
      }
      if (out[v].length == out[u].length + 1) {
        if (__builtin_add_overflow(out[v].count, out[u].count, &out[v].count))
          throw OverflowError("shortest-path count exceeds 64 bits");
      }
    }
  }
  return out;
}

PathTable::PathTable(LatticeKind kind, int lattice_size, std::size_t node_count,
                     std::vector<PairPath> entries)
    : kind_(kind), lattice_size_(lattice_size), node_count_(node_count),
      entries_(std::move(entries)) {
  slot_.assign(node_count_ * (node_count_ - 1) / 2, -1);
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (e.u >= e.v || e.v >= node_count_)
      throw ConsistencyError("path table entry has an invalid node pair");
    slot_[pair_index(e.u, e.v, node_count_)] = static_cast<std::int64_t>(i);
  }
}

std::optional<PathSummary> PathTable::find(NodeId u, NodeId v) const {
  if (u == v || u >= node_count_ || v >= node_count_) return std::nullopt;
  const auto slot = slot_[pair_index(u, v, node_count_)];
  if (slot < 0) return std::nullopt;
  return entries_[static_cast<std::size_t>(slot)].path;
}

bool PathTable::matches(const Lattice& lattice) const {
  return lattice.kind() == kind_ && lattice.size() == lattice_size_ &&
         lattice.node_count() == node_count_;
}

PathTable all_pairs_paths(const Lattice& lattice, PairSampling sampling) {
  if (!(sampling.fraction > 0.0 && sampling.fraction <= 1.0))
    throw DomainError("pair sampling fraction must lie in (0, 1]");
  const auto n = lattice.node_count();
  const auto& coords = lattice.coords();
  std::vector<PairPath> entries;
  entries.reserve(n * (n - 1) / 2);

  for (NodeId u = 0; u < n; ++u) {
    std::vector<PathSummary> from_u;
    if (lattice.kind() == LatticeKind::Hexagonal) from_u = bfs_path_counts(lattice, u);
    for (NodeId v = u + 1; v < n; ++v) {
      if (sampling.fraction < 1.0 &&
          uniform_at(sampling.seed, {pair_index(u, v, n), 0, 0}) >= sampling.fraction)
        continue;
      PathSummary ps;
      switch (lattice.kind()) {
        case LatticeKind::Square:
          ps = shortest_square(coords[u], coords[v], lattice.size());
          break;
        case LatticeKind::Triangular:
          ps = shortest_triangular(coords[u], coords[v], lattice.size());
          break;
        case LatticeKind::Hexagonal:
          ps = from_u[v];
          break;
      }
      entries.push_back({u, v, ps});
    }
  }
  return PathTable(lattice.kind(), lattice.size(), n, std::move(entries));
}

}  // namespace gcp
