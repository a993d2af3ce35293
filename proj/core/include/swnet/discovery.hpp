#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "swnet/spatial_graph.hpp"
#include "swnet/stats.hpp"

namespace swnet {

struct DiscoveryConfig {
  Hops zone_radius = 4;       // R
  Hops contact_distance = 7;  // r
  Hops contact_max = 7;       // r_max
  std::optional<std::size_t> contacts_per_node;
  std::optional<std::size_t> total_contacts;
  Hops query_depth = 4;  // QD
  /// When set, a zone owner forwards a query to the contacts of every node
  /// in its zone instead of only its own.
  bool share_zone_contacts = false;

  /// Throws ConfigError. Requires r > R so contacts sit outside the zone.
  void validate() const;
};

/// Nodes within R hops of an owner, learned over physical links.
struct ZoneTable {
  NodeId owner = 0;
  Hops radius = 0;
  std::vector<NodeId> members;  // ascending, includes the owner
  std::vector<Hops> member_hops;  // parallel to members
  std::vector<NodeId> border;   // members at exactly `radius` hops, ascending

  bool contains(NodeId v) const;
  std::optional<Hops> hops_to(NodeId v) const;
};

using Zones = std::vector<ZoneTable>;

ZoneTable build_zone(const SpatialGraph& g, NodeId owner, Hops radius);
/// One zone per node. Throws ConfigError for radius < 1.
Zones build_zones(const SpatialGraph& g, Hops radius);

struct ContactAssignment {
  std::vector<std::vector<NodeId>> contacts;  // per selector, ascending
  std::size_t starved = 0;  // selectors (or draws) with no admissible contact

  std::size_t pair_count() const;
};

/// Per-node mode: every node draws up to CN distinct contacts uniformly among
/// nodes at hop distance [r, r_max]. Total mode: total_contacts
/// (selector, contact) pairs with selectors drawn uniformly; a draw whose
/// selector has no admissible contact left is counted as starved and the
/// selector is redrawn (at most 8 * total_contacts draws overall).
ContactAssignment assign_contacts(const SpatialGraph& g, const Zones& zones,
                                  const DiscoveryConfig& cfg, std::uint64_t seed);

struct QueryOutcome {
  bool success = false;
  Hops degrees = kUnreachable;  // contact levels used; kUnreachable on failure
  std::size_t contacts_queried = 0;
};

/// Level 0 checks the source's zone; level i checks the zones of the
/// level-i contacts. Each contact is queried at most once, and the query
/// stops at the first zone holding the target.
QueryOutcome execute_query(NodeId source, NodeId target, const Zones& zones,
                           const ContactAssignment& contacts, Hops query_depth,
                           bool share_zone_contacts = false);

struct ReachabilityGrid {
  std::vector<Hops> zone_radii{1, 2, 3, 4, 5, 6};
  std::vector<Hops> query_depths{0, 1, 2, 3, 4, 5};
  DiscoveryConfig base;  // contact parameters; R and QD come from the grid
  std::size_t sources = 25;
  std::size_t targets_per_source = 50;
};

struct ReachabilityCell {
  Hops zone_radius = 0;
  Hops query_depth = 0;
  Hops contact_distance = 0;
  double contacts = 0.0;  // mean assigned pairs per seed
  Summary unreachability;
  double mean_contacts_queried = 0.0;
  std::vector<double> per_seed;  // unreachability for each seed, in seed order
};

/// Unreachability (failed / issued queries) on the largest component of g
/// for every (R, QD) cell. Contacts and query endpoints depend only on the
/// seed, so cells of one seed share them.
std::vector<ReachabilityCell> reachability_experiment(const SpatialGraph& g,
                                                      const ReachabilityGrid& grid,
                                                      std::span<const std::uint64_t> seeds,
                                                      std::size_t jobs = 1);

}  // namespace swnet
