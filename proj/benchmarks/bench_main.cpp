#include <benchmark/benchmark.h>

#include "swnet/contact_selection.hpp"
#include "swnet/discovery.hpp"
#include "swnet/metrics.hpp"
#include "swnet/mobility.hpp"
#include "swnet/random.hpp"
#include "swnet/smallworld.hpp"

using namespace swnet;

namespace {

SpatialGraph random_graph(std::size_t n, double range) {
  PlacementSpec spec;
  spec.n = n;
  return generate_topology(spec, range);
}

void BM_GenerateTopology(benchmark::State& state) {
  PlacementSpec spec;
  spec.n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(generate_topology(spec, 55.0));
}
BENCHMARK(BM_GenerateTopology)->Arg(1000)->Arg(4000);

void BM_AllPairsStats(benchmark::State& state) {
  const auto g = random_graph(static_cast<std::size_t>(state.range(0)), 55.0);
  for (auto _ : state) benchmark::DoNotOptimize(graph_stats(g));
}
BENCHMARK(BM_AllPairsStats)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_AddShortcuts(benchmark::State& state) {
  const auto g = random_graph(1000, 55.0);
  ShortcutPlan plan;
  plan.amount = LinkCount{static_cast<std::size_t>(state.range(0))};
  plan.constraint = HopConstraint::range(10);
  for (auto _ : state) benchmark::DoNotOptimize(apply_shortcuts(g, plan));
}
BENCHMARK(BM_AddShortcuts)->Arg(25)->Arg(150)->Unit(benchmark::kMillisecond);

void BM_Query(benchmark::State& state) {
  const auto g = largest_component_subgraph(random_graph(1000, 55.0));
  DiscoveryConfig cfg;
  cfg.total_contacts = 150;
  cfg.share_zone_contacts = state.range(0) != 0;
  const auto zones = build_zones(g, cfg.zone_radius);
  const auto contacts = assign_contacts(g, zones, cfg, 1);
  Rng rng = make_rng(1);
  for (auto _ : state) {
    const auto s = static_cast<NodeId>(uniform_index(rng, g.size()));
    const auto t = static_cast<NodeId>(uniform_index(rng, g.size()));
    benchmark::DoNotOptimize(execute_query(s, t, zones, contacts, 4, cfg.share_zone_contacts));
  }
}
BENCHMARK(BM_Query)->Arg(0)->Arg(1);

void BM_MobilityTick(benchmark::State& state) {
  PlacementSpec spec;
  MobilityConfig cfg;
  auto s = initial_state(place_nodes(spec), spec.area, cfg);
  for (auto _ : state) {
    advance(s, cfg);
    benchmark::DoNotOptimize(snapshot_graph(s, 55.0));
  }
}
BENCHMARK(BM_MobilityTick);

void BM_SelectionRun(benchmark::State& state) {
  PlacementSpec spec;
  MobilityConfig mc;
  mc.duration = 50;
  const auto trace = simulate(place_nodes(spec), spec.area, mc);
  const auto snaps = snapshot_graphs(trace, 55.0);
  std::vector<NodeId> sources;
  for (NodeId s = 0; s < 1000; s += 40) sources.push_back(s);
  SelectionConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(run_selection(snaps, sources, cfg, 1));
}
BENCHMARK(BM_SelectionRun)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
