#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "swnet/error.hpp"
#include "swnet/metrics.hpp"
#include "swnet/random.hpp"

using namespace swnet;

namespace {

SpatialGraph complete(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) e.push_back({u, v});
  return SpatialGraph::from_edges(n, e);
}

}  // namespace

TEST_CASE("clustering of complete and triangle-free graphs") {
  CHECK(clustering_coefficient(complete(4)) == 1.0);
  CHECK(clustering_coefficient(complete(7)) == 1.0);
  std::vector<Edge> c6;
  for (NodeId i = 0; i < 6; ++i) c6.push_back({i, static_cast<NodeId>((i + 1) % 6)});
  CHECK(clustering_coefficient(SpatialGraph::from_edges(6, c6)) == 0.0);
  CHECK_THROWS_AS(clustering_coefficient(SpatialGraph{}), UndefinedInput);
}

TEST_CASE("low-degree nodes count as zero in the mean") {
  // Triangle 0-1-2 with a pendant 3 on node 0 and an isolated node 4.
  std::vector<Edge> e{{0, 1}, {1, 2}, {0, 2}, {0, 3}};
  const auto g = SpatialGraph::from_edges(5, e);
  CHECK(local_clustering(g, 0) == doctest::Approx(1.0 / 3.0));
  CHECK(local_clustering(g, 3) == 0.0);
  CHECK(local_clustering(g, 4) == 0.0);
  CHECK(clustering_coefficient(g) == doctest::Approx((1.0 / 3.0 + 1 + 1) / 5));
}

TEST_CASE("8-neighbour grid interior coefficient from pair enumeration") {
  // Count adjacent pairs among the 8 offsets around a node, using only
  // lattice geometry: two neighbours are linked when their offset
  // difference is one of the 8 king moves.
  int pairs = 0;
  int linked = 0;
  std::vector<std::pair<int, int>> nb;
  for (int dx = -1; dx <= 1; ++dx)
    for (int dy = -1; dy <= 1; ++dy)
      if (dx || dy) nb.emplace_back(dx, dy);
  for (std::size_t i = 0; i < nb.size(); ++i)
    for (std::size_t j = i + 1; j < nb.size(); ++j) {
      ++pairs;
      const int ddx = std::abs(nb[i].first - nb[j].first);
      const int ddy = std::abs(nb[i].second - nb[j].second);
      if (ddx <= 1 && ddy <= 1) ++linked;
    }
  REQUIRE(pairs == 28);
  REQUIRE(linked == 12);
  const double expected = static_cast<double>(linked) / pairs;

  PlacementSpec spec;
  spec.kind = Placement::kGrid;
  spec.n = 100;
  spec.grid_rows = 10;
  spec.grid_cols = 10;
  spec.area = {100, 100};
  const double s = spec.grid_spacing();
  const auto g = generate_topology(spec, s * 1.5);  // between s*sqrt(2) and 2s
  for (NodeId r = 1; r + 1 < 10; ++r)
    for (NodeId c = 1; c + 1 < 10; ++c) {
      const NodeId u = r * 10 + c;
      CHECK(g.degree(u) == 8);
      CHECK(local_clustering(g, u) == expected);
      CHECK(oracle::local_clustering(g, u) == expected);
    }
}

TEST_CASE("4-neighbour grid has zero clustering") {
  PlacementSpec spec;
  spec.kind = Placement::kGrid;
  const auto g = generate_topology(spec, 35);
  CHECK(clustering_coefficient(g) == 0.0);
}

TEST_CASE("path and star path statistics") {
  std::vector<Edge> path{{0, 1}, {1, 2}};
  auto s = path_length_stats(SpatialGraph::from_edges(3, path));
  CHECK(s.avg_path_length == doctest::Approx(4.0 / 3.0));
  CHECK(s.max_path_length == 2);
  CHECK(s.diameter == 2);
  CHECK(s.reachable_pairs == 3);

  std::vector<Edge> star{{0, 1}, {0, 2}, {0, 3}};
  s = path_length_stats(SpatialGraph::from_edges(4, star));
  CHECK(s.avg_path_length == doctest::Approx(1.5));
  CHECK(s.max_path_length == 2);
}

TEST_CASE("path statistics agree with Floyd-Warshall on small graphs") {
  Rng rng = make_rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    PlacementSpec spec;
    spec.n = 10 + uniform_index(rng, 41);
    spec.area = {200, 200};
    spec.seed = trial + 1;
    auto g = generate_topology(spec, 30 + static_cast<double>(uniform_index(rng, 40)));
    if (trial % 2 == 0) {
      for (int k = 0; k < 3; ++k)
        g.add_shortcut(static_cast<NodeId>(uniform_index(rng, g.size())),
                       static_cast<NodeId>(uniform_index(rng, g.size())));
    }
    const auto expected = oracle::path_stats(g);
    const auto got = graph_stats(g);
    CHECK(got.component_size == expected.component);
    CHECK(got.reachable_pairs == expected.pairs);
    CHECK(got.max_path_length == expected.longest);
    CHECK(got.diameter == expected.longest);
    CHECK(got.avg_path_length == doctest::Approx(expected.avg).epsilon(1e-12));
    CHECK(got.clustering == doctest::Approx(oracle::clustering(g)).epsilon(1e-12));
    CHECK(got.clustering >= 0.0);
    CHECK(got.clustering <= 1.0);
    if (got.component_size > 1) {
      CHECK(got.avg_path_length >= 1.0);
      CHECK(got.avg_path_length <= got.max_path_length);
    }
  }
}

TEST_CASE("adding edges to a connected graph never lengthens paths") {
  PlacementSpec spec;
  spec.n = 120;
  spec.area = {300, 300};
  auto g = largest_component_subgraph(generate_topology(spec, 60));
  Rng rng = make_rng(3);
  auto prev = path_length_stats(g);
  for (int i = 0; i < 15; ++i) {
    g.add_shortcut(static_cast<NodeId>(uniform_index(rng, g.size())),
                   static_cast<NodeId>(uniform_index(rng, g.size())));
    const auto now = path_length_stats(g);
    CHECK(now.avg_path_length <= prev.avg_path_length);
    CHECK(now.max_path_length <= prev.max_path_length);
    prev = now;
  }
}

TEST_CASE("normalized ratios") {
  GraphStats base;
  base.clustering = 0.6;
  base.avg_path_length = 12;
  base.max_path_length = 30;
  auto r = normalized_ratios(base, base);
  CHECK(r.l_ratio == 1.0);
  CHECK(r.m_ratio == 1.0);
  CHECK(*r.c_ratio == 1.0);
  CHECK(*r.cl == 1.0);

  GraphStats half = base;
  half.avg_path_length = 6;
  r = normalized_ratios(base, half);
  CHECK(r.l_ratio == 0.5);
  CHECK(*r.c_ratio == 1.0);
  CHECK(*r.cl == 2.0);

  GraphStats grid = base;
  grid.clustering = 0.0;
  r = normalized_ratios(grid, grid);
  CHECK_FALSE(r.c_ratio.has_value());
  CHECK_FALSE(r.cl.has_value());

  GraphStats zero;
  CHECK_THROWS_AS(normalized_ratios(zero, base), UndefinedInput);
}

TEST_CASE("55-random baseline statistics") {
  double c = 0, l = 0, m = 0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    PlacementSpec spec;
    spec.seed = seed;
    const auto s = graph_stats(generate_topology(spec, 55));
    c += s.clustering / 3;
    l += s.avg_path_length / 3;
    m += s.max_path_length / 3.0;
  }
  CHECK(std::abs(c - 0.58) <= 0.05);
  CHECK(std::abs(l - 12.3) <= 1.5);
  CHECK(std::abs(m - 31) <= 5);
}
