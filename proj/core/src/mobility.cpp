#include "swnet/mobility.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <string>

#include "swnet/error.hpp"

namespace swnet {

void MobilityConfig::validate() const {
  if (!(v_max >= 0.0)) throw ConfigError("v_max must be >= 0");
  if (!(pause >= 0.0)) throw ConfigError("pause must be >= 0");
  if (!(tick > 0.0)) throw ConfigError("tick must be > 0");
  if (!(duration >= 0.0)) throw ConfigError("duration must be >= 0");
}

std::size_t MobilityConfig::steps() const {
  // Small epsilon so 200 / 1 or 10 / 0.1 land on the intended count.
  return static_cast<std::size_t>(std::floor(duration / tick + 1e-9));
}

std::vector<Point> WaypointState::positions() const {
  std::vector<Point> out;
  out.reserve(nodes.size());
  for (const auto& m : nodes) out.push_back(m.position);
  return out;
}

namespace {

Point draw_destination(Rng& rng, const Area& area) {
  std::uniform_real_distribution<double> ux(0.0, area.width);
  std::uniform_real_distribution<double> uy(0.0, area.height);
  const double x = ux(rng);
  return {x, uy(rng)};
}

double draw_speed(Rng& rng, double v_max) {
  if (v_max <= 0.0) return 0.0;
  std::uniform_real_distribution<double> us(0.0, v_max);
  for (;;) {
    const double v = us(rng);
    if (v > 0.0) return v;
  }
}

}  // namespace

WaypointState initial_state(std::vector<Point> start, Area area, const MobilityConfig& cfg) {
  cfg.validate();
  WaypointState s{area, {}, make_rng(cfg.seed, 0x3a7), 0};
  s.nodes.reserve(start.size());
  for (const Point& p : start) {
    if (!area.contains(p)) throw ConfigError("initial position outside the area");
    NodeMotion m;
    m.position = p;
    m.destination = draw_destination(s.rng, area);
    m.speed = draw_speed(s.rng, cfg.v_max);
    s.nodes.push_back(m);
  }
  return s;
}

void advance(WaypointState& state, const MobilityConfig& cfg) {
  for (auto& m : state.nodes) {
    if (m.pause_left > 0.0) {
      m.pause_left = std::max(0.0, m.pause_left - cfg.tick);
      continue;
    }
    if (m.speed <= 0.0) continue;
    const double remaining = distance(m.position, m.destination);
    const double travel = m.speed * cfg.tick;
    if (travel >= remaining) {
      m.position = m.destination;
      m.destination = draw_destination(state.rng, state.area);
      m.speed = draw_speed(state.rng, cfg.v_max);
      m.pause_left = cfg.pause;
    } else {
      const double f = travel / remaining;
      m.position.x = std::clamp(m.position.x + (m.destination.x - m.position.x) * f, 0.0,
                                state.area.width);
      m.position.y = std::clamp(m.position.y + (m.destination.y - m.position.y) * f, 0.0,
                                state.area.height);
    }
  }
  ++state.tick;
}

WaypointState step(WaypointState state, const MobilityConfig& cfg) {
  advance(state, cfg);
  return state;
}

SpatialGraph snapshot_graph(const WaypointState& state, double range) {
  return SpatialGraph(state.positions(), state.area, range);
}

MobilityTrace simulate(std::vector<Point> start, Area area, const MobilityConfig& cfg) {
  WaypointState state = initial_state(std::move(start), area, cfg);
  MobilityTrace trace{area, cfg.tick, {}};
  const std::size_t steps = cfg.steps();
  trace.frames.reserve(steps + 1);
  trace.frames.push_back(state.positions());
  for (std::size_t t = 0; t < steps; ++t) {
    advance(state, cfg);
    trace.frames.push_back(state.positions());
  }
  return trace;
}

SpatialGraph snapshot_graph(const MobilityTrace& trace, std::size_t tick, double range) {
  return SpatialGraph(trace.frames.at(tick), trace.area, range);
}

std::vector<SpatialGraph> snapshot_graphs(const MobilityTrace& trace, double range) {
  std::vector<SpatialGraph> out;
  out.reserve(trace.ticks());
  for (std::size_t t = 0; t < trace.ticks(); ++t) out.push_back(snapshot_graph(trace, t, range));
  return out;
}

void write_trajectory_csv(std::ostream& out, const MobilityTrace& trace) {
  auto num = [](double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 3);
    return std::string(buf, end);
  };
  out << "tick,node,x,y\n";
  for (std::size_t t = 0; t < trace.ticks(); ++t)
    for (std::size_t i = 0; i < trace.frames[t].size(); ++i)
      out << t << ',' << i << ',' << num(trace.frames[t][i].x) << ','
          << num(trace.frames[t][i].y) << '\n';
}

void HopHistogram::add(Hops h) {
  if (h == kUnreachable) {
    ++unreachable;
    return;
  }
  const auto idx = static_cast<std::size_t>(h);
  if (counts.size() <= idx) counts.resize(idx + 1, 0);
  ++counts[idx];
}

std::uint64_t HopHistogram::samples() const {
  std::uint64_t total = unreachable;
  for (auto c : counts) total += c;
  return total;
}

double HopHistogram::fraction(Hops h) const {
  const auto total = samples();
  if (total == 0 || h < 0 || static_cast<std::size_t>(h) >= counts.size()) return 0.0;
  return static_cast<double>(counts[static_cast<std::size_t>(h)]) / static_cast<double>(total);
}

double HopHistogram::unreachable_fraction() const {
  const auto total = samples();
  return total == 0 ? 0.0 : static_cast<double>(unreachable) / static_cast<double>(total);
}

double HopHistogram::fraction_between(Hops lo, Hops hi) const {
  double f = 0.0;
  for (Hops h = std::max<Hops>(lo, 0); h <= hi; ++h) f += fraction(h);
  return f;
}

Hops HopHistogram::max_hop() const {
  return counts.empty() ? kUnreachable : static_cast<Hops>(counts.size() - 1);
}

double total_variation(const HopHistogram& a, const HopHistogram& b) {
  const Hops top = std::max(a.max_hop(), b.max_hop());
  double tv = std::abs(a.unreachable_fraction() - b.unreachable_fraction());
  for (Hops h = 0; h <= top; ++h) tv += std::abs(a.fraction(h) - b.fraction(h));
  return tv / 2.0;
}

HopHistogram track_hop_histogram(std::span<const SpatialGraph> snapshots,
                                 std::span<const NodeId> sources,
                                 std::span<const std::vector<NodeId>> tracked) {
  if (sources.size() != tracked.size())
    throw ConfigError("one tracked set per source is required");
  HopHistogram hist;
  if (snapshots.empty()) return hist;
  Bfs bfs(snapshots.front().size());
  for (const auto& g : snapshots) {
    for (std::size_t i = 0; i < sources.size(); ++i) {
      if (tracked[i].empty()) continue;
      bfs.run(g, sources[i], EdgeFilter::kPhysicalOnly);
      for (NodeId v : tracked[i]) hist.add(bfs.hops(v));
    }
  }
  return hist;
}

}  // namespace swnet
