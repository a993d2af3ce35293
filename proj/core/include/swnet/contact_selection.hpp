#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "swnet/discovery.hpp"
#include "swnet/mobility.hpp"
#include "swnet/spatial_graph.hpp"

namespace swnet {

/// Hop thresholds for a tracked node. A candidate becomes a contact at
/// hops >= promotion; a contact is evicted at hops < lower_eviction or
/// hops > upper_eviction.
struct Boundaries {
  Hops promotion = 7;        // PB
  Hops lower_eviction = 4;   // LEB
  Hops upper_eviction = 10;  // UEB

  /// Requires LEB <= PB < UEB. Throws ConfigError.
  void validate() const;
};

enum class SelectionKind { kBorder, kNeighborPrediction };

std::string_view to_string(SelectionKind kind);
/// "border" or "prediction" (alias "neighbor-prediction").
SelectionKind parse_selection_kind(std::string_view name);

struct SelectionProtocol {
  SelectionKind kind = SelectionKind::kBorder;
  /// Border nodes tracked per source (border protocol only).
  std::size_t track_count = 20;
};

enum class RecordState { kCandidate, kContact, kEvictedLower, kEvictedUpper, kLost };

std::string_view to_string(RecordState state);

struct HopSample {
  std::size_t tick = 0;
  Hops hops = kUnreachable;
  friend bool operator==(const HopSample&, const HopSample&) = default;
};

struct CandidateRecord {
  NodeId source = 0;
  NodeId node = 0;
  RecordState state = RecordState::kCandidate;
  std::vector<HopSample> hop_history;
  std::size_t enrolled_at = 0;
  std::optional<std::size_t> promoted_at;
  /// Tick of the terminal transition (eviction or loss).
  std::optional<std::size_t> evicted_at;
  /// Last known source -> node route, refreshed while reachable.
  std::vector<NodeId> route;

  bool terminal() const {
    return state != RecordState::kCandidate && state != RecordState::kContact;
  }
};

struct CandidateSelection {
  std::vector<CandidateRecord> records;
  std::size_t shortfall = 0;  // border protocol: track_count - |border| when positive
};

/// Border protocol: up to track_count distinct border nodes sampled
/// uniformly. Prediction protocol: every 1-hop neighbour.
CandidateSelection select_candidates(NodeId source, const ZoneTable& zone,
                                     const SelectionProtocol& protocol, std::uint64_t seed,
                                     std::size_t tick = 0);

/// Applies one tick of promotion/eviction rules to a single record whose
/// latest sample `hops` has already been resolved (kUnreachable means the
/// route could not be recovered). Terminal records are left untouched.
void update_record(CandidateRecord& record, Hops hops, const Boundaries& bounds,
                   SelectionKind kind, Hops zone_radius, std::size_t tick);

/// update_record for a batch of records sharing one source; `hops_by_node`
/// holds the snapshot hop count from that source to every node.
void update_tracking(std::span<CandidateRecord> records, std::span<const Hops> hops_by_node,
                     const Boundaries& bounds, SelectionKind kind, Hops zone_radius,
                     std::size_t tick);

/// Zone information propagation: recovers a route from `source` to `target`
/// on the current snapshot using only zone-local knowledge. Returns the
/// intra-zone route if the target is still in the source's zone; otherwise
/// extends through the last in-zone node of `last_route`, then through each
/// current border node in ascending order. nullopt when no zone covers the
/// target.
std::optional<std::vector<NodeId>> zip_route(const SpatialGraph& snapshot, NodeId source,
                                             NodeId target, std::span<const NodeId> last_route,
                                             Hops zone_radius);

struct SelectionConfig {
  Hops zone_radius = 4;
  Boundaries boundaries;
  SelectionProtocol protocol;
  /// Zone radius in metres for overlap: zone_radius * overlap_beta * range.
  double overlap_beta = 0.8;

  void validate() const;
};

struct SelectionRun {
  std::vector<CandidateRecord> records;  // grouped by source, in source order
  std::size_t shortfall = 0;
};

/// Enrols candidates for every source at tick 0 and applies the rules on
/// every snapshot. Unreachable samples get one ZIP attempt before the record
/// is declared lost.
SelectionRun run_selection(std::span<const SpatialGraph> snapshots,
                           std::span<const NodeId> sources, const SelectionConfig& cfg,
                           std::uint64_t seed);

struct SelectionMetrics {
  std::optional<double> persistence;     // s, over contacts evicted at LEB/UEB
  std::optional<double> persistence_upper;  // s, over contacts evicted at UEB only
  std::optional<double> promotion_time;  // s, enrolment -> promotion
  std::optional<double> avg_overlap;     // m
  double conversion = 0.0;               // promoted / enrolled
  std::size_t enrolled = 0;
  std::size_t promoted = 0;
  std::size_t evictions_lower = 0;  // contacts evicted at LEB
  std::size_t evictions_upper = 0;  // contacts evicted at UEB
  std::size_t remaining = 0;        // contacts alive at the end
  std::size_t lost = 0;             // contacts lost to route failure
  std::size_t candidate_evictions = 0;
  std::size_t candidate_lost = 0;
};

/// Post-run metrics. `trace` supplies node positions for the overlap metric
/// (sum over contact pairs of max(0, 2*rho - distance) / (n(n-1)/2), averaged
/// over every (source, tick) with at least two contacts).
SelectionMetrics compute_metrics(std::span<const CandidateRecord> records,
                                 const MobilityTrace& trace, const SelectionConfig& cfg,
                                 double range);

struct ProtocolComparison {
  SelectionMetrics border;
  SelectionMetrics prediction;
  std::size_t border_sources = 0;
  std::size_t prediction_sources = 0;
  bool matched = false;  // both protocols reached the contact target
};

/// Runs both protocols on the same snapshots. For each protocol, sources are
/// taken in pool order until `target_contacts` promotions have accumulated,
/// and metrics are computed over those sources only.
ProtocolComparison compare_protocols(std::span<const SpatialGraph> snapshots,
                                     const MobilityTrace& trace, double range,
                                     std::span<const NodeId> source_pool,
                                     const SelectionConfig& border_cfg,
                                     const SelectionConfig& prediction_cfg,
                                     std::size_t target_contacts, std::uint64_t seed);

}  // namespace swnet
