#include <doctest.h>

#include <cmath>

#include "gcp/errors.hpp"
#include "gcp/percolation.hpp"
#include "gcp/union_find.hpp"

using namespace gcp;

TEST_CASE("union find tracks the largest component") {
  UnionFind uf(6);
  CHECK(uf.largest() == 1);
  CHECK(uf.unite(0, 1));
  CHECK(uf.unite(2, 3));
  CHECK_FALSE(uf.unite(1, 0));
  CHECK(uf.largest() == 2);
  CHECK(uf.unite(1, 3));
  CHECK(uf.largest() == 4);
  CHECK(uf.find(0) == uf.find(2));
  CHECK(uf.component_size(5) == 1);
  uf.reset();
  CHECK(uf.largest() == 1);
  CHECK(uf.find(3) == 3);
}

TEST_CASE("giant fraction") {
  std::vector<Edge> all;
  for (NodeId u = 0; u < 9; ++u)
    for (NodeId v = u + 1; v < 9; ++v) all.push_back({u, v});
  CHECK(all.size() == 36);
  CHECK(giant_fraction(9, all) == 1.0);
  CHECK(giant_fraction(9, {}) == doctest::Approx(1.0 / 9.0));
  const std::vector<Edge> two{{0, 1}, {2, 3}};
  CHECK(giant_fraction(4, two) == 0.5);
  const std::vector<Edge> bad{{0, 7}};
  CHECK_THROWS_AS(giant_fraction(4, bad), DomainError);
}

TEST_CASE("edge probabilities") {
  const auto lat = build_lattice(LatticeKind::Square, 4);
  const auto table = all_pairs_paths(lat);

  const auto full = build_edge_probs(lat, table, ThetaNorm(1.0), Protocol::GCP);
  CHECK(full.edges.size() == 120);
  for (const auto& e : full.edges) CHECK(e.probability == doctest::Approx(1.0).epsilon(1e-12));

  const auto none = build_edge_probs(lat, table, ThetaNorm(0.0), Protocol::GCP);
  for (const auto& e : none.edges) CHECK(e.probability == 0.0);

  const auto cep = build_edge_probs(lat, table, ThetaNorm(2.0 / 3.0), Protocol::CEP);
  CHECK(cep.edges.size() == lat.edges().size());
  for (const auto& e : cep.edges) CHECK(std::abs(e.probability - 0.5) < 1e-12);

  // Neighbour pairs carry the CEP probability inside the GCP set.
  const auto gcp = build_edge_probs(lat, table, ThetaNorm(0.4), Protocol::GCP);
  const auto cep4 = build_edge_probs(lat, table, ThetaNorm(0.4), Protocol::CEP);
  for (const auto& ce : cep4.edges) {
    const auto& ge = gcp.edges[ce.pair];
    CHECK(ge.u == ce.u);
    CHECK(ge.v == ce.v);
    CHECK(std::abs(ge.probability - ce.probability) < 1e-12);
  }

  const auto other = build_lattice(LatticeKind::Square, 5);
  CHECK_THROWS_AS(build_edge_probs(other, table, ThetaNorm(0.5), Protocol::GCP), ConsistencyError);
}

TEST_CASE("sweep trivial endpoints") {
  for (auto kind : {LatticeKind::Square, LatticeKind::Triangular, LatticeKind::Hexagonal}) {
    const auto lat = build_lattice(kind, 3);
    const auto table = all_pairs_paths(lat);
    const std::vector<double> grid{0.0, 1.0};
    for (auto protocol : {Protocol::GCP, Protocol::CEP}) {
      const auto curve = sweep(lat, table, protocol, grid, {20, 5, 1});
      CHECK(curve.points[0].p_mean == doctest::Approx(1.0 / lat.node_count()));
      CHECK(curve.points[0].p_stderr == 0.0);
      CHECK(curve.points[1].p_mean == 1.0);
      CHECK(curve.points[1].p_stderr == 0.0);
      CHECK(curve.node_count == lat.node_count());
    }
  }
}

TEST_CASE("sweep validates its inputs") {
  const auto lat = build_lattice(LatticeKind::Square, 3);
  const auto table = all_pairs_paths(lat);
  const std::vector<double> empty;
  const std::vector<double> outside{0.5, 1.5};
  const std::vector<double> unsorted{0.5, 0.2};
  const std::vector<double> ok{0.5};
  CHECK_THROWS_AS(sweep(lat, table, Protocol::GCP, empty, {10, 0, 1}), DomainError);
  CHECK_THROWS_AS(sweep(lat, table, Protocol::GCP, outside, {10, 0, 1}), DomainError);
  CHECK_THROWS_AS(sweep(lat, table, Protocol::GCP, unsorted, {10, 0, 1}), DomainError);
  CHECK_THROWS_AS(sweep(lat, table, Protocol::GCP, ok, {0, 0, 1}), DomainError);
}

TEST_CASE("sampled fractions stay in bounds and match the mean") {
  const auto lat = build_lattice(LatticeKind::Triangular, 5);
  const auto table = all_pairs_paths(lat);
  const auto set = build_edge_probs(lat, table, ThetaNorm(0.3), Protocol::GCP);
  double sum = 0.0;
  for (std::uint32_t e = 0; e < 50; ++e) {
    const double f = sample_giant_fraction(set, 11, 0, e);
    CHECK(f >= 1.0 / 25.0);
    CHECK(f <= 1.0);
    sum += f;
  }
  const std::vector<double> grid{0.3};
  const auto curve = sweep(lat, table, Protocol::GCP, grid, {50, 11, 1});
  CHECK(curve.points[0].p_mean == doctest::Approx(sum / 50.0).epsilon(1e-14));
}

TEST_CASE("sweep is independent of worker count") {
  const auto lat = build_lattice(LatticeKind::Hexagonal, 3);
  const auto table = all_pairs_paths(lat);
  const auto grid = uniform_grid(0.0, 1.0, 21);
  const auto one = sweep(lat, table, Protocol::GCP, grid, {40, 123, 1});
  for (unsigned w : {2u, 3u, 8u}) {
    const auto many = sweep(lat, table, Protocol::GCP, grid, {40, 123, w});
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK(many.points[i].p_mean == one.points[i].p_mean);
      CHECK(many.points[i].p_stderr == one.points[i].p_stderr);
    }
  }
}

TEST_CASE("coupled GCP dominates CEP sample by sample") {
  const auto lat = build_lattice(LatticeKind::Square, 5);
  const auto table = all_pairs_paths(lat);
  for (double t : {0.2, 0.35, 0.5, 0.7}) {
    const auto gcp = build_edge_probs(lat, table, ThetaNorm(t), Protocol::GCP);
    const auto cep = build_edge_probs(lat, table, ThetaNorm(t), Protocol::CEP);
    for (std::uint32_t e = 0; e < 100; ++e)
      CHECK(sample_giant_fraction(gcp, 9, 1, e) >= sample_giant_fraction(cep, 9, 1, e));
  }
}

TEST_CASE("uniform grid") {
  const auto g = uniform_grid(0.0, 1.0, 101);
  CHECK(g.size() == 101);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 1.0);
  CHECK(g[50] == doctest::Approx(0.5));
  CHECK(uniform_grid(0.3, 0.3, 1) == std::vector<double>{0.3});
  CHECK_THROWS_AS(uniform_grid(0.0, 1.0, 0), DomainError);
}

TEST_CASE("protocol names") {
  CHECK(parse_protocol("gcp") == Protocol::GCP);
  CHECK(parse_protocol("cep") == Protocol::CEP);
  CHECK_FALSE(parse_protocol("qep").has_value());
}
