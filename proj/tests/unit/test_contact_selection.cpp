#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "swnet/contact_selection.hpp"
#include "swnet/error.hpp"
#include "swnet/random.hpp"

using namespace swnet;

namespace {

SpatialGraph path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return SpatialGraph::from_edges(n, e);
}

SpatialGraph star(std::size_t leaves) {
  std::vector<Edge> e;
  for (NodeId i = 1; i <= leaves; ++i) e.push_back({0, i});
  return SpatialGraph::from_edges(leaves + 1, e);
}

CandidateRecord feed(const std::vector<Hops>& hops, SelectionKind kind,
                     const Boundaries& b = {}, Hops radius = 4) {
  CandidateRecord r;
  for (std::size_t t = 0; t < hops.size(); ++t) update_record(r, hops[t], b, kind, radius, t);
  return r;
}

bool valid_route(const SpatialGraph& g, const std::vector<NodeId>& route, NodeId s, NodeId t) {
  if (route.empty() || route.front() != s || route.back() != t) return false;
  std::set<NodeId> seen(route.begin(), route.end());
  if (seen.size() != route.size()) return false;
  for (std::size_t i = 1; i < route.size(); ++i)
    if (!g.has_physical_edge(route[i - 1], route[i])) return false;
  return true;
}

}  // namespace

TEST_CASE("a border candidate moving out is promoted at PB") {
  const auto r = feed({4, 5, 6, 7}, SelectionKind::kBorder);
  CHECK(r.state == RecordState::kContact);
  CHECK(r.promoted_at == 3);
  CHECK(r.hop_history.size() == 4);
  CHECK(r.hop_history[2] == HopSample{2, 6});
}

TEST_CASE("contacts are evicted past the upper and below the lower boundary") {
  auto r = feed({4, 7, 10, 11}, SelectionKind::kBorder);
  CHECK(r.state == RecordState::kEvictedUpper);
  CHECK(r.promoted_at == 1);
  CHECK(r.evicted_at == 3);

  r = feed({4, 7, 4, 3}, SelectionKind::kBorder);
  CHECK(r.state == RecordState::kEvictedLower);
  CHECK(r.evicted_at == 3);

  // Terminal records ignore later samples.
  update_record(r, 7, {}, SelectionKind::kBorder, 4, 4);
  CHECK(r.hop_history.size() == 4);
  CHECK(r.state == RecordState::kEvictedLower);
}

TEST_CASE("candidates that move inward are evicted") {
  auto r = feed({4, 3}, SelectionKind::kBorder);
  CHECK(r.state == RecordState::kEvictedLower);
  CHECK_FALSE(r.promoted_at.has_value());

  r = feed({1, 2, 1}, SelectionKind::kNeighborPrediction);
  CHECK(r.state == RecordState::kEvictedLower);
  CHECK(r.evicted_at == 2);

  r = feed({1, 1, 2, 2, 3}, SelectionKind::kNeighborPrediction);
  CHECK(r.state == RecordState::kCandidate);
}

TEST_CASE("unreachable samples lose the record") {
  const auto r = feed({4, 6, kUnreachable}, SelectionKind::kBorder);
  CHECK(r.state == RecordState::kLost);
  CHECK(r.evicted_at == 2);
}

TEST_CASE("candidate selection") {
  const auto four = star(4);
  const auto zone = build_zone(four, 0, 1);
  SelectionProtocol border{SelectionKind::kBorder, 7};
  auto sel = select_candidates(0, zone, border, 1);
  CHECK(sel.records.size() == 4);
  CHECK(sel.shortfall == 3);

  const auto five = star(5);
  SelectionProtocol predict{SelectionKind::kNeighborPrediction, 20};
  sel = select_candidates(0, build_zone(five, 0, 1), predict, 1);
  CHECK(sel.records.size() == 5);
  CHECK(sel.shortfall == 0);

  const auto big = star(40);
  sel = select_candidates(0, build_zone(big, 0, 1), border, 3);
  CHECK(sel.records.size() == 7);
  CHECK(sel.shortfall == 0);
  std::set<NodeId> distinct;
  for (const auto& r : sel.records) {
    distinct.insert(r.node);
    CHECK(r.node != 0);
    CHECK(r.state == RecordState::kCandidate);
  }
  CHECK(distinct.size() == 7);
  const auto again = select_candidates(0, build_zone(big, 0, 1), border, 3);
  for (std::size_t i = 0; i < 7; ++i) CHECK(again.records[i].node == sel.records[i].node);
}

TEST_CASE("zone information recovers a route through the stale path") {
  // S=0 A=1 B=2 Z=3, then C=4 splices in between B and Z.
  const std::vector<NodeId> last{0, 1, 2, 3};
  std::vector<Edge> e{{0, 1}, {1, 2}, {2, 4}, {4, 3}};
  const auto g = SpatialGraph::from_edges(5, e);
  const auto route = zip_route(g, 0, 3, last, 3);
  REQUIRE(route.has_value());
  CHECK(*route == std::vector<NodeId>{0, 1, 2, 4, 3});

  // Target still inside the zone: plain shortest path.
  const auto near = zip_route(g, 0, 4, last, 3);
  REQUIRE(near.has_value());
  CHECK(*near == std::vector<NodeId>{0, 1, 2, 4});
}

TEST_CASE("zone information reaches two zone radii and no further") {
  const Hops radius = 2;
  const auto g = path_graph(10);
  const auto ok = zip_route(g, 0, 2 * radius, {}, radius);
  REQUIRE(ok.has_value());
  CHECK(ok->size() == static_cast<std::size_t>(2 * radius + 1));
  CHECK_FALSE(zip_route(g, 0, 2 * radius + 1, {}, radius).has_value());
  CHECK_FALSE(zip_route(g, 0, 2 * radius + 2, {}, radius).has_value());
  CHECK_FALSE(zip_route(SpatialGraph::from_edges(3, {}), 0, 2, {}, radius).has_value());
}

TEST_CASE("recovered routes are valid and short") {
  PlacementSpec spec;
  spec.n = 150;
  spec.area = {400, 400};
  Rng rng = make_rng(5);
  std::size_t found = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    spec.seed = seed;
    const auto g = generate_topology(spec, 50);
    for (int i = 0; i < 30; ++i) {
      const auto s = static_cast<NodeId>(uniform_index(rng, g.size()));
      const auto t = static_cast<NodeId>(uniform_index(rng, g.size()));
      const Hops radius = 1 + static_cast<Hops>(uniform_index(rng, 4));
      const Hops truth = hop_distances(g, s, false)[t];
      const auto route = zip_route(g, s, t, {}, radius);
      if (!route) {
        CHECK((truth == kUnreachable || truth > 2 * radius));
        continue;
      }
      ++found;
      CHECK(valid_route(g, *route, s, t));
      CHECK(static_cast<Hops>(route->size()) - 1 <= 2 * radius);
      CHECK(static_cast<Hops>(route->size()) - 1 >= truth);
    }
  }
  CHECK(found > 100);
}

TEST_CASE("record updates agree with the rule replay") {
  Rng rng = make_rng(2024);
  const Boundaries bounds[] = {{7, 4, 10}, {7, 7, 10}, {4, 4, 10}, {7, 4, 13}, {5, 1, 6}};
  for (int trial = 0; trial < 10000; ++trial) {
    const auto& b = bounds[trial % 5];
    const auto kind = trial % 2 ? SelectionKind::kBorder : SelectionKind::kNeighborPrediction;
    const Hops radius = 1 + static_cast<Hops>(uniform_index(rng, 5));
    std::vector<HopSample> history;
    Hops h = kind == SelectionKind::kBorder ? radius : 1;
    const std::size_t len = 1 + uniform_index(rng, 30);
    for (std::size_t t = 0; t < len; ++t) {
      if (uniform_index(rng, 60) == 0) {
        history.push_back({t, kUnreachable});
        continue;
      }
      history.push_back({t, h});
      h = std::max<Hops>(1, h + static_cast<Hops>(uniform_index(rng, 5)) - 2);
    }
    CandidateRecord r;
    for (const auto& s : history) update_record(r, s.hops, b, kind, radius, s.tick);
    const auto want = oracle::replay(history, b, kind, radius);
    CHECK(r.state == want.state);
    CHECK(r.promoted_at == want.promoted_at);
    CHECK(r.evicted_at == want.ended_at);
  }
}

TEST_CASE("selection runs account for every record") {
  PlacementSpec spec;
  MobilityConfig mob;
  mob.duration = 80;
  const auto trace = simulate(place_nodes(spec), spec.area, mob);
  const auto snaps = snapshot_graphs(trace, 55);
  const std::vector<NodeId> sources{3, 50, 400, 777};
  for (auto kind : {SelectionKind::kBorder, SelectionKind::kNeighborPrediction}) {
    SelectionConfig cfg;
    cfg.protocol.kind = kind;
    const auto run = run_selection(snaps, sources, cfg, 1);
    const auto m = compute_metrics(run.records, trace, cfg, 55);
    std::size_t candidates = 0;
    for (const auto& r : run.records) {
      if (r.state == RecordState::kCandidate) ++candidates;
      CHECK(r.hop_history.size() <= snaps.size());
      if (r.promoted_at) CHECK(r.hop_history[*r.promoted_at].hops >= cfg.boundaries.promotion);
    }
    CHECK(m.enrolled == run.records.size());
    CHECK(m.promoted == m.evictions_lower + m.evictions_upper + m.remaining + m.lost);
    CHECK(m.enrolled == m.promoted + m.candidate_evictions + m.candidate_lost + candidates);
    CHECK(m.conversion >= 0.0);
    CHECK(m.conversion <= 1.0);
    if (m.persistence) CHECK(*m.persistence >= 0.0);
    if (m.promotion_time) CHECK(*m.promotion_time > 0.0);
    if (m.avg_overlap) CHECK(*m.avg_overlap >= 0.0);
  }
}

TEST_CASE("overlap and undefined metrics") {
  MobilityTrace trace;
  trace.area = {1000, 1000};
  trace.frames = {{{0, 0}, {100, 0}, {900, 0}, {100, 0}}};
  SelectionConfig cfg;
  cfg.zone_radius = 1;
  cfg.overlap_beta = 1.0;  // rho = 50 m at range 50

  auto contact = [](NodeId node) {
    CandidateRecord r;
    r.node = node;
    r.state = RecordState::kContact;
    r.promoted_at = 0;
    return r;
  };
  std::vector<CandidateRecord> far{contact(1), contact(2)};
  auto m = compute_metrics(far, trace, cfg, 50);
  REQUIRE(m.avg_overlap.has_value());
  CHECK(*m.avg_overlap == 0.0);

  std::vector<CandidateRecord> same{contact(1), contact(3)};
  m = compute_metrics(same, trace, cfg, 50);
  CHECK(*m.avg_overlap == doctest::Approx(100.0));

  m = compute_metrics({}, trace, cfg, 50);
  CHECK_FALSE(m.persistence.has_value());
  CHECK_FALSE(m.promotion_time.has_value());
  CHECK_FALSE(m.avg_overlap.has_value());
  CHECK(m.conversion == 0.0);
}

TEST_CASE("selection config validation") {
  SelectionConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.boundaries = {7, 8, 10};
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.boundaries = {10, 4, 10};
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.boundaries = {};
  cfg.protocol.track_count = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  CHECK(parse_selection_kind("neighbor-prediction") == SelectionKind::kNeighborPrediction);
  CHECK_THROWS_AS(parse_selection_kind("oracle"), ConfigError);
}
