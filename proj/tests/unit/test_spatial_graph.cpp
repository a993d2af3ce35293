#include <doctest.h>

#include <cmath>
#include <set>

#include "oracles.hpp"
#include "swnet/error.hpp"
#include "swnet/metrics.hpp"
#include "swnet/random.hpp"
#include "swnet/spatial_graph.hpp"

using namespace swnet;

namespace {

SpatialGraph path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return SpatialGraph::from_edges(n, e);
}

void check_invariants(const SpatialGraph& g) {
  for (NodeId u = 0; u < g.size(); ++u) {
    std::set<NodeId> seen;
    for (NodeId v : g.neighbors(u)) {
      CHECK(v != u);
      CHECK(seen.insert(v).second);
      CHECK(g.has_edge(v, u));
    }
    for (NodeId v : g.shortcut_neighbors(u)) CHECK_FALSE(g.has_physical_edge(u, v));
  }
}

}  // namespace

TEST_CASE("unit-disk edges match a pairwise rescan") {
  for (std::uint64_t seed : {1, 2, 3}) {
    PlacementSpec spec;
    spec.n = 300;
    spec.seed = seed;
    const auto g = generate_topology(spec, 80.0);
    const auto expected = oracle::unit_disk_edges(g.positions(), 80.0);
    std::set<std::pair<NodeId, NodeId>> got;
    for (const auto& e : g.edges()) {
      CHECK(e.kind == EdgeKind::kPhysical);
      got.emplace(e.u, e.v);
    }
    CHECK(got == expected);
    check_invariants(g);
  }
}

TEST_CASE("range boundary is inclusive") {
  const Area area{100, 100};
  const double r = 10.0;
  SpatialGraph in({{0, 0}, {r - 1e-9, 0}}, area, r);
  SpatialGraph at({{0, 0}, {r, 0}}, area, r);
  SpatialGraph out({{0, 0}, {r + 1e-9, 0}}, area, r);
  CHECK(in.edge_count() == 1);
  CHECK(at.edge_count() == 1);
  CHECK(out.edge_count() == 0);
}

TEST_CASE("two nodes with range above the diagonal share one edge") {
  PlacementSpec spec;
  spec.n = 2;
  const auto g = generate_topology(spec, 1500.0);
  CHECK(g.edge_count() == 1);
}

TEST_CASE("2x2 grid below the diagonal has four edges") {
  PlacementSpec spec;
  spec.kind = Placement::kGrid;
  spec.n = 4;
  spec.grid_rows = 2;
  spec.grid_cols = 2;
  spec.area = {100, 100};
  const double s = spec.grid_spacing();
  CHECK(s == doctest::Approx(50.0));
  CHECK(generate_topology(spec, s).edge_count() == 4);
  CHECK(generate_topology(spec, s * std::sqrt(2.0) - 1e-6).edge_count() == 4);
  CHECK(generate_topology(spec, s * std::sqrt(2.0) + 1e-6).edge_count() == 6);
}

TEST_CASE("default grid: 25 m spacing, 1935 edges at range 35") {
  PlacementSpec spec;
  spec.kind = Placement::kGrid;
  CHECK(spec.grid_spacing() == doctest::Approx(25.0));
  const auto g = generate_topology(spec, 35.0);
  CHECK(g.edge_count() == 1935);
  CHECK(std::abs(static_cast<double>(g.edge_count()) - 1936.0) <= 1.0);
  CHECK(clustering_coefficient(g) == 0.0);
  for (const auto& p : g.positions()) CHECK(spec.area.contains(p));
}

TEST_CASE("55-random edge count near 4785") {
  double total = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    PlacementSpec spec;
    spec.seed = seed;
    total += static_cast<double>(generate_topology(spec, 55.0).edge_count());
  }
  CHECK(std::abs(total / 5 - 4785.0) <= 478.5);
}

TEST_CASE("placements stay inside the area and are deterministic") {
  for (auto kind : {Placement::kRandomUniform, Placement::kNormal, Placement::kSkewed,
                    Placement::kGrid}) {
    PlacementSpec spec;
    spec.kind = kind;
    spec.seed = 9;
    const auto a = place_nodes(spec);
    CHECK(a.size() == spec.n);
    for (const auto& p : a) CHECK(spec.area.contains(p));
    CHECK(a == place_nodes(spec));
    CHECK(generate_topology(spec, 55) == generate_topology(spec, 55));
    if (kind != Placement::kGrid) {
      spec.seed = 10;
      CHECK(a != place_nodes(spec));
    }
  }
}

TEST_CASE("skewed placement leans toward the origin corner") {
  PlacementSpec spec;
  spec.kind = Placement::kSkewed;
  double mx = 0, my = 0;
  for (const auto& p : place_nodes(spec)) {
    mx += p.x;
    my += p.y;
  }
  // E[x] for lambda=2 is W * (1/(1-e^-2) - 1/2) ~ 0.343 W.
  const double expected = 1000.0 * (1.0 / (1.0 - std::exp(-2.0)) - 0.5);
  CHECK(mx / 1000 == doctest::Approx(expected).epsilon(0.08));
  CHECK(my / 1000 == doctest::Approx(expected).epsilon(0.08));
}

TEST_CASE("normal placement centres near the mean") {
  PlacementSpec spec;
  spec.kind = Placement::kNormal;
  double mx = 0;
  for (const auto& p : place_nodes(spec)) mx += p.x;
  CHECK(mx / 1000 == doctest::Approx(500.0).epsilon(0.05));
}

TEST_CASE("invalid specs are configuration errors") {
  PlacementSpec spec;
  spec.n = 0;
  CHECK_THROWS_AS(generate_topology(spec, 55), ConfigError);
  spec = {};
  CHECK_THROWS_AS(generate_topology(spec, 0.0), ConfigError);
  spec.kind = Placement::kGrid;
  spec.grid_rows = 10;
  CHECK_THROWS_AS(generate_topology(spec, 35), ConfigError);
  CHECK_THROWS_AS(parse_placement("hexagonal"), ConfigError);
  CHECK(parse_placement("random") == Placement::kRandomUniform);
}

TEST_CASE("hop distances on a path and across components") {
  const auto g = path_graph(3);
  CHECK(hop_distances(g, 0) == std::vector<Hops>{0, 1, 2});
  std::vector<Edge> e{{0, 1}, {2, 3}};
  const auto two = SpatialGraph::from_edges(4, e);
  CHECK(hop_distances(two, 0) == std::vector<Hops>{0, 1, kUnreachable, kUnreachable});
}

TEST_CASE("hop distances agree with Floyd-Warshall and are symmetric") {
  PlacementSpec spec;
  spec.n = 50;
  spec.area = {300, 300};
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    spec.seed = seed;
    auto g = generate_topology(spec, 60);
    g.add_shortcut(0, 49);
    const auto fw = oracle::floyd_warshall(g);
    const auto fw_phys = oracle::floyd_warshall(g, true);
    for (NodeId u = 0; u < g.size(); ++u) {
      const auto all = hop_distances(g, u, true);
      const auto phys = hop_distances(g, u, false);
      for (NodeId v = 0; v < g.size(); ++v) {
        CHECK(all[v] == (fw[u][v] >= oracle::kInf ? kUnreachable : fw[u][v]));
        CHECK(phys[v] == (fw_phys[u][v] >= oracle::kInf ? kUnreachable : fw_phys[u][v]));
      }
    }
  }
}

TEST_CASE("adding a shortcut never increases a hop distance") {
  PlacementSpec spec;
  spec.n = 200;
  spec.area = {400, 400};
  auto g = generate_topology(spec, 50);
  Rng rng = make_rng(4);
  for (int i = 0; i < 20; ++i) {
    const auto before = hop_distances(g, 0);
    const auto u = static_cast<NodeId>(uniform_index(rng, g.size()));
    const auto v = static_cast<NodeId>(uniform_index(rng, g.size()));
    g.add_shortcut(u, v);
    const auto after = hop_distances(g, 0);
    for (NodeId w = 0; w < g.size(); ++w)
      if (before[w] != kUnreachable) CHECK(after[w] <= before[w]);
  }
  check_invariants(g);
}

TEST_CASE("edge editing keeps the graph simple") {
  auto g = path_graph(4);
  CHECK_FALSE(g.add_shortcut(1, 1));
  CHECK_FALSE(g.add_shortcut(0, 1));
  CHECK(g.add_shortcut(0, 3));
  CHECK_FALSE(g.add_edge(3, 0, EdgeKind::kPhysical));
  CHECK(g.shortcut_edge_count() == 1);
  CHECK(g.edge_count() == 4);
  CHECK(g.remove_edge(1, 2));
  CHECK_FALSE(g.remove_edge(1, 2));
  CHECK(g.physical_edge_count() == 2);
  check_invariants(g);
}

TEST_CASE("bfs hop limit and shortest paths") {
  const auto g = path_graph(6);
  Bfs bfs(g.size());
  bfs.run(g, 0, EdgeFilter::kAll, 2);
  CHECK(bfs.order().size() == 3);
  CHECK_FALSE(bfs.reached(3));
  CHECK(bfs.path_to(2) == std::vector<NodeId>{0, 1, 2});
  CHECK(bfs.path_to(4).empty());
  bfs.run(g, 5, EdgeFilter::kAll);
  CHECK(bfs.hops(0) == 5);
  CHECK(bfs.hops(5) == 0);
}

TEST_CASE("largest component and tie-break") {
  const auto pair = SpatialGraph::from_edges(2, {});
  CHECK(largest_component(pair) == std::vector<NodeId>{0});
  std::vector<Edge> k3{{1, 2}, {2, 3}, {1, 3}};
  const auto g = SpatialGraph::from_edges(4, k3);
  CHECK(largest_component(g) == std::vector<NodeId>{1, 2, 3});
  CHECK(largest_component(path_graph(5)).size() == 5);
  const auto sub = largest_component_subgraph(g);
  CHECK(sub.size() == 3);
  CHECK(sub.edge_count() == 3);
  CHECK(largest_component(SpatialGraph{}).empty());
}

TEST_CASE("induced subgraph keeps shortcut kinds") {
  auto g = path_graph(5);
  g.add_shortcut(1, 4);
  const std::vector<NodeId> keep{1, 2, 4};
  const auto sub = g.induced_subgraph(keep);
  CHECK(sub.size() == 3);
  CHECK(sub.has_physical_edge(0, 1));
  CHECK(sub.has_edge(0, 2));
  CHECK_FALSE(sub.has_physical_edge(0, 2));
  CHECK(sub.edge_count() == 2);
}
