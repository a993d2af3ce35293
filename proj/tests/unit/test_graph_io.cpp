#include <doctest.h>

#include <sstream>

#include "swnet/error.hpp"
#include "swnet/graph_io.hpp"
#include "swnet/random.hpp"
#include "swnet/smallworld.hpp"

using namespace swnet;

TEST_CASE("graph files round-trip exactly") {
  for (auto kind : {Placement::kRandomUniform, Placement::kNormal, Placement::kSkewed,
                    Placement::kGrid}) {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      PlacementSpec spec;
      spec.kind = kind;
      spec.seed = seed;
      spec.n = kind == Placement::kGrid ? 100 : 150;
      spec.grid_rows = 10;
      spec.grid_cols = 10;
      spec.area = {400, 300};
      auto g = generate_topology(spec, 45);
      ShortcutPlan plan;
      plan.amount = LinkCount{7};
      plan.seed = seed;
      g = apply_shortcuts(g, plan).graph;

      std::stringstream buf;
      write_graph(buf, g, seed);
      const auto text = buf.str();
      const auto back = read_graph(buf);
      CHECK(back.seed == seed);
      CHECK(back.graph == g);

      std::stringstream again;
      write_graph(again, back.graph, back.seed);
      CHECK(again.str() == text);
    }
  }
}

TEST_CASE("graph file layout") {
  std::vector<Edge> e{{0, 1}, {1, 2}, {0, 2, EdgeKind::kShortcut}};
  const auto g = SpatialGraph::from_edges(3, e);
  std::stringstream buf;
  write_graph(buf, g, 5);
  std::string line;
  std::getline(buf, line);
  CHECK(line.rfind("swnet-graph n=3 ", 0) == 0);
  CHECK(line.find("seed=5") != std::string::npos);
  std::vector<std::string> rest;
  while (std::getline(buf, line)) rest.push_back(line);
  REQUIRE(rest.size() == 6);
  CHECK(rest[0] == "node 0 0 0");
  CHECK(rest[3] == "edge 0 1 phys");
  CHECK(rest[4] == "edge 0 2 shortcut");
  CHECK(rest[5] == "edge 1 2 phys");
}

TEST_CASE("malformed graph files are rejected") {
  const char* bad[] = {
      "",
      "graph n=2\n",
      "swnet-graph n=2 width=10 height=10 range=1 seed=1\nnode 0 0 0\n",
      "swnet-graph n=2 width=10 height=10 range=1 seed=1\nnode 0 0 0\nnode 1 1 1\nedge 0 5 phys\n",
      "swnet-graph n=2 width=10 height=10 range=1 seed=1\nnode 0 0 0\nnode 1 1 1\nedge 0 1 radio\n",
      "swnet-graph n=1 width=10 height=10 range=1 seed=1\nnode 0 zero 0\n",
  };
  for (const char* text : bad) {
    std::stringstream in(text);
    CHECK_THROWS_AS(read_graph(in), ConfigError);
  }
}
