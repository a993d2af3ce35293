#include "swnet/contact_selection.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "swnet/error.hpp"
#include "swnet/random.hpp"

namespace swnet {

void Boundaries::validate() const {
  if (!(lower_eviction <= promotion && promotion < upper_eviction))
    throw ConfigError("boundaries need LEB <= PB < UEB (got PB=" + std::to_string(promotion) +
                      " LEB=" + std::to_string(lower_eviction) +
                      " UEB=" + std::to_string(upper_eviction) + ")");
  if (lower_eviction < 1) throw ConfigError("LEB must be >= 1");
}

std::string_view to_string(SelectionKind kind) {
  return kind == SelectionKind::kBorder ? "border" : "prediction";
}

SelectionKind parse_selection_kind(std::string_view name) {
  if (name == "border") return SelectionKind::kBorder;
  if (name == "prediction" || name == "neighbor-prediction")
    return SelectionKind::kNeighborPrediction;
  throw ConfigError("unknown selection protocol '" + std::string(name) + "'");
}

std::string_view to_string(RecordState state) {
  switch (state) {
    case RecordState::kCandidate:
      return "candidate";
    case RecordState::kContact:
      return "contact";
    case RecordState::kEvictedLower:
      return "evicted-lower";
    case RecordState::kEvictedUpper:
      return "evicted-upper";
    case RecordState::kLost:
      return "lost";
  }
  return "unknown";
}

void SelectionConfig::validate() const {
  if (zone_radius < 1) throw ConfigError("zone radius must be >= 1");
  boundaries.validate();
  if (protocol.kind == SelectionKind::kBorder && protocol.track_count < 1)
    throw ConfigError("border protocol needs track_count >= 1");
  if (!(overlap_beta > 0.0)) throw ConfigError("overlap beta must be > 0");
}

CandidateSelection select_candidates(NodeId source, const ZoneTable& zone,
                                     const SelectionProtocol& protocol, std::uint64_t seed,
                                     std::size_t tick) {
  CandidateSelection out;
  std::vector<NodeId> picked;
  if (protocol.kind == SelectionKind::kBorder) {
    picked = zone.border;
    if (picked.size() > protocol.track_count) {
      Rng rng = make_rng(seed, source);
      for (std::size_t i = 0; i < protocol.track_count; ++i)
        std::swap(picked[i], picked[i + uniform_index(rng, picked.size() - i)]);
      picked.resize(protocol.track_count);
      std::sort(picked.begin(), picked.end());
    } else {
      out.shortfall = protocol.track_count - picked.size();
    }
  } else {
    for (std::size_t i = 0; i < zone.members.size(); ++i)
      if (zone.member_hops[i] == 1) picked.push_back(zone.members[i]);
  }
  out.records.reserve(picked.size());
  for (NodeId v : picked) {
    CandidateRecord r;
    r.source = source;
    r.node = v;
    r.enrolled_at = tick;
    out.records.push_back(std::move(r));
  }
  return out;
}

void update_record(CandidateRecord& record, Hops hops, const Boundaries& bounds,
                   SelectionKind kind, Hops zone_radius, std::size_t tick) {
  if (record.terminal()) return;
  const Hops previous =
      record.hop_history.empty() ? kUnreachable : record.hop_history.back().hops;
  record.hop_history.push_back({tick, hops});

  auto finish = [&](RecordState s) {
    record.state = s;
    record.evicted_at = tick;
  };

  if (hops == kUnreachable) {
    finish(RecordState::kLost);
    return;
  }
  if (record.state == RecordState::kCandidate) {
    const bool moved_in = kind == SelectionKind::kBorder
                              ? hops < zone_radius
                              : (previous != kUnreachable && hops < previous);
    if (moved_in) {
      finish(RecordState::kEvictedLower);
    } else if (hops >= bounds.promotion) {
      record.state = RecordState::kContact;
      record.promoted_at = tick;
    }
    return;
  }
  if (hops < bounds.lower_eviction) {
    finish(RecordState::kEvictedLower);
  } else if (hops > bounds.upper_eviction) {
    finish(RecordState::kEvictedUpper);
  }
}

void update_tracking(std::span<CandidateRecord> records, std::span<const Hops> hops_by_node,
                     const Boundaries& bounds, SelectionKind kind, Hops zone_radius,
                     std::size_t tick) {
  for (auto& r : records) update_record(r, hops_by_node[r.node], bounds, kind, zone_radius, tick);
}

namespace {

// Joins a->b and b->c paths (sharing b) and cuts any loop so the result is a
// simple path.
std::vector<NodeId> join_paths(const std::vector<NodeId>& first,
                               const std::vector<NodeId>& second) {
  std::vector<NodeId> walk = first;
  walk.insert(walk.end(), second.begin() + 1, second.end());
  std::vector<NodeId> path;
  for (NodeId v : walk) {
    auto it = std::find(path.begin(), path.end(), v);
    if (it != path.end()) {
      path.erase(it + 1, path.end());
    } else {
      path.push_back(v);
    }
  }
  return path;
}

}  // namespace

std::optional<std::vector<NodeId>> zip_route(const SpatialGraph& snapshot, NodeId source,
                                             NodeId target, std::span<const NodeId> last_route,
                                             Hops zone_radius) {
  Bfs from_source(snapshot.size());
  from_source.run(snapshot, source, EdgeFilter::kPhysicalOnly, zone_radius);
  if (from_source.reached(target)) return from_source.path_to(target);

  Bfs from_border(snapshot.size());
  auto through = [&](NodeId b) -> std::optional<std::vector<NodeId>> {
    from_border.run(snapshot, b, EdgeFilter::kPhysicalOnly, zone_radius);
    if (!from_border.reached(target)) return std::nullopt;
    return join_paths(from_source.path_to(b), from_border.path_to(target));
  };

  // Last node of the stale route that is still inside the source's zone.
  for (auto it = last_route.rbegin(); it != last_route.rend(); ++it) {
    if (*it == target || *it >= snapshot.size() || !from_source.reached(*it)) continue;
    if (auto route = through(*it)) return route;
    break;
  }

  std::vector<NodeId> border;
  for (NodeId b : from_source.order())
    if (from_source.hops(b) == zone_radius) border.push_back(b);
  std::sort(border.begin(), border.end());
  for (NodeId b : border)
    if (auto route = through(b)) return route;
  return std::nullopt;
}

SelectionRun run_selection(std::span<const SpatialGraph> snapshots,
                           std::span<const NodeId> sources, const SelectionConfig& cfg,
                           std::uint64_t seed) {
  cfg.validate();
  SelectionRun run;
  if (snapshots.empty()) return run;
  const SpatialGraph& first = snapshots.front();

  std::vector<std::size_t> begin;  // record range start per source
  for (NodeId s : sources) {
    begin.push_back(run.records.size());
    auto sel = select_candidates(s, build_zone(first, s, cfg.zone_radius), cfg.protocol, seed);
    run.shortfall += sel.shortfall;
    for (auto& r : sel.records) run.records.push_back(std::move(r));
  }
  begin.push_back(run.records.size());

  Bfs bfs(first.size());
  for (std::size_t t = 0; t < snapshots.size(); ++t) {
    const SpatialGraph& g = snapshots[t];
    for (std::size_t i = 0; i < sources.size(); ++i) {
      const std::span<CandidateRecord> group(run.records.data() + begin[i],
                                             begin[i + 1] - begin[i]);
      if (std::all_of(group.begin(), group.end(), [](const auto& r) { return r.terminal(); }))
        continue;
      bfs.run(g, sources[i], EdgeFilter::kPhysicalOnly);
      for (auto& r : group) {
        if (r.terminal()) continue;
        Hops h = bfs.hops(r.node);
        if (h != kUnreachable) {
          r.route = bfs.path_to(r.node);
        } else if (auto route = zip_route(g, sources[i], r.node, r.route, cfg.zone_radius)) {
          r.route = std::move(*route);
          h = static_cast<Hops>(r.route.size()) - 1;
        }
        update_record(r, h, cfg.boundaries, cfg.protocol.kind, cfg.zone_radius, t);
      }
    }
  }
  return run;
}

SelectionMetrics compute_metrics(std::span<const CandidateRecord> records,
                                 const MobilityTrace& trace, const SelectionConfig& cfg,
                                 double range) {
  SelectionMetrics m;
  m.enrolled = records.size();
  double lifespan = 0.0;
  double upper_lifespan = 0.0;
  std::size_t evicted = 0;
  double promotion = 0.0;
  for (const auto& r : records) {
    if (!r.promoted_at) {
      if (r.state == RecordState::kEvictedLower) ++m.candidate_evictions;
      if (r.state == RecordState::kLost) ++m.candidate_lost;
      continue;
    }
    ++m.promoted;
    promotion += static_cast<double>(*r.promoted_at - r.enrolled_at) * trace.tick;
    switch (r.state) {
      case RecordState::kContact:
        ++m.remaining;
        break;
      case RecordState::kEvictedLower:
        ++m.evictions_lower;
        break;
      case RecordState::kEvictedUpper:
        ++m.evictions_upper;
        break;
      case RecordState::kLost:
        ++m.lost;
        break;
      case RecordState::kCandidate:
        break;
    }
    if (r.state == RecordState::kEvictedLower || r.state == RecordState::kEvictedUpper) {
      const double life = static_cast<double>(*r.evicted_at - *r.promoted_at) * trace.tick;
      lifespan += life;
      ++evicted;
      if (r.state == RecordState::kEvictedUpper) upper_lifespan += life;
    }
  }
  if (m.enrolled > 0)
    m.conversion = static_cast<double>(m.promoted) / static_cast<double>(m.enrolled);
  if (evicted > 0) m.persistence = lifespan / static_cast<double>(evicted);
  if (m.evictions_upper > 0)
    m.persistence_upper = upper_lifespan / static_cast<double>(m.evictions_upper);
  if (m.promoted > 0) m.promotion_time = promotion / static_cast<double>(m.promoted);

  // Overlap: contacts alive at tick t per source.
  const double rho = static_cast<double>(cfg.zone_radius) * cfg.overlap_beta * range;
  std::map<NodeId, std::vector<const CandidateRecord*>> by_source;
  for (const auto& r : records)
    if (r.promoted_at) by_source[r.source].push_back(&r);
  double overlap_sum = 0.0;
  std::size_t overlap_samples = 0;
  std::vector<Point> alive;
  for (const auto& [source, contacts] : by_source) {
    for (std::size_t t = 0; t < trace.ticks(); ++t) {
      alive.clear();
      for (const auto* r : contacts) {
        if (*r->promoted_at > t) continue;
        if (r->evicted_at && *r->evicted_at <= t) continue;
        alive.push_back(trace.frames[t][r->node]);
      }
      if (alive.size() < 2) continue;
      double sum = 0.0;
      for (std::size_t i = 0; i < alive.size(); ++i)
        for (std::size_t j = i + 1; j < alive.size(); ++j)
          sum += std::max(0.0, 2.0 * rho - distance(alive[i], alive[j]));
      const double pairs = static_cast<double>(alive.size() * (alive.size() - 1)) / 2.0;
      overlap_sum += sum / pairs;
      ++overlap_samples;
    }
  }
  if (overlap_samples > 0) m.avg_overlap = overlap_sum / static_cast<double>(overlap_samples);
  return m;
}

namespace {

struct MatchedSubset {
  std::vector<CandidateRecord> records;
  std::size_t sources = 0;
  bool reached = false;
};

MatchedSubset take_until(const SelectionRun& run, std::span<const NodeId> pool,
                         std::size_t target_contacts) {
  MatchedSubset out;
  std::size_t promoted = 0;
  std::size_t idx = 0;
  for (NodeId s : pool) {
    if (promoted >= target_contacts) break;
    while (idx < run.records.size() && run.records[idx].source == s) {
      if (run.records[idx].promoted_at) ++promoted;
      out.records.push_back(run.records[idx]);
      ++idx;
    }
    ++out.sources;
  }
  out.reached = promoted >= target_contacts;
  return out;
}

}  // namespace

ProtocolComparison compare_protocols(std::span<const SpatialGraph> snapshots,
                                     const MobilityTrace& trace, double range,
                                     std::span<const NodeId> source_pool,
                                     const SelectionConfig& border_cfg,
                                     const SelectionConfig& prediction_cfg,
                                     std::size_t target_contacts, std::uint64_t seed) {
  if (border_cfg.protocol.kind != SelectionKind::kBorder ||
      prediction_cfg.protocol.kind != SelectionKind::kNeighborPrediction)
    throw ConfigError("compare_protocols expects a border and a prediction config");
  ProtocolComparison out;
  const auto border_run = run_selection(snapshots, source_pool, border_cfg, seed);
  const auto prediction_run = run_selection(snapshots, source_pool, prediction_cfg, seed);
  const auto border = take_until(border_run, source_pool, target_contacts);
  const auto prediction = take_until(prediction_run, source_pool, target_contacts);
  out.border = compute_metrics(border.records, trace, border_cfg, range);
  out.prediction = compute_metrics(prediction.records, trace, prediction_cfg, range);
  out.border_sources = border.sources;
  out.prediction_sources = prediction.sources;
  out.matched = border.reached && prediction.reached;
  return out;
}

}  // namespace swnet
