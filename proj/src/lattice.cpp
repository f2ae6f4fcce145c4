#include "gcp/lattice.hpp"

#include <algorithm>

#include "gcp/errors.hpp"

namespace gcp {

std::string_view to_string(LatticeKind kind) {
  switch (kind) {
    case LatticeKind::Square: return "square";
    case LatticeKind::Triangular: return "triangular";
    case LatticeKind::Hexagonal: return "hexagonal";
  }
  return "unknown";
}

std::optional<LatticeKind> parse_lattice_kind(std::string_view name) {
  if (name == "square") return LatticeKind::Square;
  if (name == "triangular") return LatticeKind::Triangular;
  if (name == "hexagonal") return LatticeKind::Hexagonal;
  return std::nullopt;
}

std::size_t expected_node_count(LatticeKind kind, int size) {
  if (size < 2) throw DomainError("lattice size must be >= 2");
  const auto s = static_cast<std::size_t>(size);
  if (kind == LatticeKind::Hexagonal) return 2 * s * s + 4 * s;
  return s * s;
}

std::optional<NodeId> Lattice::node_at(Coord c) const {
  if (c.x < 0 || c.y < 0 || c.x >= width_ || c.y >= height_) return std::nullopt;
  const auto id = index_[static_cast<std::size_t>(c.y) * width_ + c.x];
  if (id < 0) return std::nullopt;
  return static_cast<NodeId>(id);
}

namespace {

// x range of node row y in the brick-wall honeycomb with k x k cells.
// Cell row j (between node rows j and j+1) spans x in [j%2, j%2 + 2k].
std::pair<int, int> hex_row_span(int k, int y) {
  int lo = 2 * k + 2, hi = -1;
  for (int j : {y - 1, y}) {
    if (j < 0 || j >= k) continue;
    lo = std::min(lo, j % 2);
    hi = std::max(hi, j % 2 + 2 * k);
  }
  return {lo, hi};
}

}  // namespace

Lattice build_lattice(LatticeKind kind, int size) {
  if (size < 2) throw DomainError("lattice size must be >= 2, got " + std::to_string(size));

  Lattice lat;
  lat.kind_ = kind;
  lat.size_ = size;

  if (kind == LatticeKind::Hexagonal) {
    lat.width_ = 2 * size + 2;
    lat.height_ = size + 1;
  } else {
    lat.width_ = size;
    lat.height_ = size;
  }
  lat.index_.assign(static_cast<std::size_t>(lat.width_) * lat.height_, -1);

  for (int y = 0; y < lat.height_; ++y) {
    int lo = 0, hi = lat.width_ - 1;
    if (kind == LatticeKind::Hexagonal) std::tie(lo, hi) = hex_row_span(size, y);
    for (int x = lo; x <= hi; ++x) {
      lat.index_[static_cast<std::size_t>(y) * lat.width_ + x] =
          static_cast<std::int64_t>(lat.coords_.size());
      lat.coords_.push_back({x, y});
    }
  }

  auto link = [&](Coord a, Coord b) {
    auto na = lat.node_at(a);
    auto nb = lat.node_at(b);
    if (!na || !nb) return;
    lat.edges_.push_back({std::min(*na, *nb), std::max(*na, *nb)});
  };

  // Edges are emitted per node in id order: right, up, then diagonal.
  for (const Coord c : lat.coords_) {
    link(c, {c.x + 1, c.y});
    if (kind != LatticeKind::Hexagonal || (c.x + c.y) % 2 == 0) link(c, {c.x, c.y + 1});
    if (kind == LatticeKind::Triangular) link(c, {c.x + 1, c.y + 1});
  }

  lat.adjacency_.assign(lat.coords_.size(), {});
  for (const Edge& e : lat.edges_) {
    lat.adjacency_[e.u].push_back(e.v);
    lat.adjacency_[e.v].push_back(e.u);
  }
  for (auto& nbrs : lat.adjacency_) std::sort(nbrs.begin(), nbrs.end());
  return lat;
}

}  // namespace gcp
