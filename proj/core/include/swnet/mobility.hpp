#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "swnet/random.hpp"
#include "swnet/spatial_graph.hpp"

namespace swnet {

struct MobilityConfig {
  double v_max = 20.0;     // m/s
  double pause = 0.0;      // s
  double tick = 1.0;       // s
  double duration = 200.0; // s
  std::uint64_t seed = 1;

  /// Throws ConfigError.
  void validate() const;
  /// Number of steps after the initial frame: floor(duration / tick).
  std::size_t steps() const;
};

struct NodeMotion {
  Point position;
  Point destination;
  double speed = 0.0;
  double pause_left = 0.0;
};

/// Random-waypoint state for every node. Owns its generator so a state
/// sequence is fully determined by the initial positions and the seed.
struct WaypointState {
  Area area;
  std::vector<NodeMotion> nodes;
  Rng rng;
  std::size_t tick = 0;

  std::vector<Point> positions() const;
};

WaypointState initial_state(std::vector<Point> start, Area area, const MobilityConfig& cfg);

/// One tick: every node moves min(speed * tick, remaining) straight toward its
/// destination; on arrival it draws a fresh destination and speed in
/// (0, v_max]. Zero speed draws are redrawn (v_max = 0 keeps nodes still).
void advance(WaypointState& state, const MobilityConfig& cfg);
WaypointState step(WaypointState state, const MobilityConfig& cfg);

SpatialGraph snapshot_graph(const WaypointState& state, double range);

/// Positions at ticks 0..steps().
struct MobilityTrace {
  Area area;
  double tick = 1.0;
  std::vector<std::vector<Point>> frames;

  std::size_t ticks() const { return frames.size(); }
};

MobilityTrace simulate(std::vector<Point> start, Area area, const MobilityConfig& cfg);

SpatialGraph snapshot_graph(const MobilityTrace& trace, std::size_t tick, double range);
std::vector<SpatialGraph> snapshot_graphs(const MobilityTrace& trace, double range);

/// CSV: tick,node,x,y
void write_trajectory_csv(std::ostream& out, const MobilityTrace& trace);

struct HopHistogram {
  std::vector<std::uint64_t> counts;  // counts[h] = samples at h hops
  std::uint64_t unreachable = 0;

  void add(Hops h);
  std::uint64_t samples() const;
  double fraction(Hops h) const;
  double unreachable_fraction() const;
  /// Fraction of all samples (unreachable included) with lo <= h <= hi.
  double fraction_between(Hops lo, Hops hi) const;
  Hops max_hop() const;
};

/// Total-variation distance between two normalized histograms; the
/// unreachable bin counts as one more category.
double total_variation(const HopHistogram& a, const HopHistogram& b);

/// At every frame, the physical hop count from sources[i] to each node of
/// tracked[i] on the snapshot graph.
HopHistogram track_hop_histogram(std::span<const SpatialGraph> snapshots,
                                 std::span<const NodeId> sources,
                                 std::span<const std::vector<NodeId>> tracked);

}  // namespace swnet
