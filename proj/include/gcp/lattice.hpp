#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gcp {

enum class LatticeKind { Square, Triangular, Hexagonal };

std::string_view to_string(LatticeKind kind);
// Accepts "square", "triangular", "hexagonal" (case-sensitive).
std::optional<LatticeKind> parse_lattice_kind(std::string_view name);

using NodeId = std::uint32_t;

struct Coord {
  int x = 0;
  int y = 0;
  friend bool operator==(const Coord&, const Coord&) = default;
};

struct Edge {
  NodeId u = 0;  // u < v
  NodeId v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Open-boundary 2D lattice. Immutable once built.
///
/// Square and triangular lattices are L x L grids with node id y*L + x.
/// The triangular lattice adds one (x,y)-(x+1,y+1) diagonal per unit cell.
/// The hexagonal lattice is a k x k patch of honeycomb cells in brick-wall
/// layout: k+1 node rows, vertical bonds where x+y is even, N = 2k^2 + 4k.
class Lattice {
 public:
  LatticeKind kind() const { return kind_; }
  int size() const { return size_; }
  std::size_t node_count() const { return coords_.size(); }
  const std::vector<Coord>& coords() const { return coords_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<NodeId>& neighbors(NodeId n) const { return adjacency_.at(n); }

  Coord coord(NodeId n) const { return coords_.at(n); }
  // Node at a coordinate, if the coordinate lies on the lattice.
  std::optional<NodeId> node_at(Coord c) const;

 private:
  friend Lattice build_lattice(LatticeKind kind, int size);

  LatticeKind kind_ = LatticeKind::Square;
  int size_ = 0;
  int width_ = 0;   // bounding box of the coordinate embedding
  int height_ = 0;
  std::vector<Coord> coords_;
  std::vector<std::int64_t> index_;  // width_*height_ grid -> node id or -1
  std::vector<Edge> edges_;
  std::vector<std::vector<NodeId>> adjacency_;
};

// Throws DomainError when size < 2.
Lattice build_lattice(LatticeKind kind, int size);

// Node count a (kind, size) lattice will have, without building it.
std::size_t expected_node_count(LatticeKind kind, int size);

}  // namespace gcp
