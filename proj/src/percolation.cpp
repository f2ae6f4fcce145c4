#include "gcp/percolation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "gcp/errors.hpp"
#include "gcp/rng.hpp"
#include "gcp/union_find.hpp"

namespace gcp {

std::string_view to_string(Protocol p) { return p == Protocol::GCP ? "gcp" : "cep"; }

std::optional<Protocol> parse_protocol(std::string_view name) {
  if (name == "gcp") return Protocol::GCP;
  if (name == "cep") return Protocol::CEP;
  return std::nullopt;
}

ProbabilisticEdgeSet build_edge_probs(const Lattice& lattice, const PathTable& table, ThetaNorm t,
                                      Protocol protocol) {
  if (!table.matches(lattice)) throw ConsistencyError("path table does not belong to this lattice");
  const auto n = lattice.node_count();
  ProbabilisticEdgeSet set{protocol, n, {}};

  if (protocol == Protocol::CEP) {
    const double p = singlet_prob_of_theta(t).value();
    set.edges.reserve(lattice.edges().size());
    for (const Edge& e : lattice.edges()) set.edges.push_back({e.u, e.v, pair_index(e.u, e.v, n), p});
    return set;
  }

  const Concurrence edge_c = concurrence_of_theta(t);
  set.edges.reserve(table.size());
  for (const PairPath& pp : table.entries()) {
    const double p = singlet_prob_of_concurrence(gcp_pair_concurrence(edge_c, pp.path)).value();
    set.edges.push_back({pp.u, pp.v, pair_index(pp.u, pp.v, n), p});
  }
  return set;
}

double giant_fraction(std::size_t node_count, std::span<const Edge> edges) {
  if (node_count == 0) throw DomainError("giant fraction of an empty graph");
  UnionFind uf(node_count);
  for (const Edge& e : edges) {
    if (e.u >= node_count || e.v >= node_count) throw DomainError("edge references a missing node");
    uf.unite(e.u, e.v);
  }
  return static_cast<double>(uf.largest()) / static_cast<double>(node_count);
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t n) {
  if (n == 0) throw DomainError("grid needs at least one point");
  if (n == 1) return {lo};
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i)
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  grid.back() = hi;
  return grid;
}

namespace {

// Each Philox block yields two 53-bit uniforms, one for an even pair index
// and one for the following odd index.
double pair_uniform(std::uint64_t seed, std::uint64_t pair, std::uint32_t theta_index,
                    std::uint32_t ensemble_index) {
  const auto b = philox_block(seed, {pair >> 1, theta_index, ensemble_index});
  return (pair & 1) ? to_unit(b[2], b[3]) : to_unit(b[0], b[1]);
}

double sample_into(UnionFind& uf, const ProbabilisticEdgeSet& set, std::uint64_t seed,
                   std::uint32_t theta_index, std::uint32_t ensemble_index) {
  uf.reset();
  for (const ProbabilisticEdge& e : set.edges) {
    if (e.probability <= 0.0) continue;
    if (e.probability >= 1.0 ||
        pair_uniform(seed, e.pair, theta_index, ensemble_index) < e.probability)
      uf.unite(e.u, e.v);
  }
  return static_cast<double>(uf.largest()) / static_cast<double>(set.node_count);
}

}  // namespace

double sample_giant_fraction(const ProbabilisticEdgeSet& set, std::uint64_t seed,
                             std::uint32_t theta_index, std::uint32_t ensemble_index) {
  UnionFind uf(set.node_count);
  return sample_into(uf, set, seed, theta_index, ensemble_index);
}

PercolationCurve sweep(const Lattice& lattice, const PathTable& table, Protocol protocol,
                       std::span<const double> grid, const SweepOptions& options) {
  if (grid.empty()) throw DomainError("theta grid is empty");
  if (options.ensembles < 1) throw DomainError("ensemble count must be >= 1");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0 && grid[i] <= 1.0)) throw DomainError("theta grid must lie in [0, 1]");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw DomainError("theta grid must be strictly increasing");
  }

  std::vector<ProbabilisticEdgeSet> sets;
  sets.reserve(grid.size());
  for (double t : grid) sets.push_back(build_edge_probs(lattice, table, ThetaNorm(t), protocol));

  const std::size_t ensembles = options.ensembles;
  const std::size_t cells = grid.size() * ensembles;
  std::vector<double> samples(cells);

  unsigned workers = options.workers ? options.workers : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(grid.size())));

  // Workers claim whole theta rows; every sample lands in its own slot.
  std::atomic<std::size_t> next_row{0};
  auto work = [&] {
    UnionFind uf(lattice.node_count());
    for (std::size_t row; (row = next_row.fetch_add(1)) < grid.size();) {
      for (std::size_t e = 0; e < ensembles; ++e)
        samples[row * ensembles + e] = sample_into(uf, sets[row], options.seed,
                                                   static_cast<std::uint32_t>(row),
                                                   static_cast<std::uint32_t>(e));
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  PercolationCurve curve{lattice.kind(), lattice.node_count(), protocol, options.ensembles,
                         options.seed, {}};
  curve.points.reserve(grid.size());
  for (std::size_t row = 0; row < grid.size(); ++row) {
    const double* s = samples.data() + row * ensembles;
    double sum = 0.0;
    for (std::size_t e = 0; e < ensembles; ++e) sum += s[e];
    const auto [lo, hi] = std::minmax_element(s, s + ensembles);
    const double mean = std::clamp(sum / static_cast<double>(ensembles), *lo, *hi);
    double stderr_ = 0.0;
    if (ensembles > 1) {
      double ss = 0.0;
      for (std::size_t e = 0; e < ensembles; ++e) ss += (s[e] - mean) * (s[e] - mean);
      stderr_ = std::sqrt(ss / static_cast<double>(ensembles - 1) / static_cast<double>(ensembles));
    }
    curve.points.push_back({grid[row], mean, stderr_});
  }
  return curve;
}

}  // namespace gcp
