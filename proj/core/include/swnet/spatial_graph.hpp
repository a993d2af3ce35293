#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace swnet {

using NodeId = std::uint32_t;

/// Hop count between two nodes; kUnreachable when no path exists.
using Hops = std::int32_t;
inline constexpr Hops kUnreachable = -1;
inline constexpr Hops kNoHopLimit = std::numeric_limits<Hops>::max();

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

double distance(Point a, Point b);

struct Area {
  double width = 1000.0;
  double height = 1000.0;
  bool contains(Point p) const {
    return p.x >= 0.0 && p.x <= width && p.y >= 0.0 && p.y <= height;
  }
  friend bool operator==(const Area&, const Area&) = default;
};

enum class Placement { kRandomUniform, kNormal, kSkewed, kGrid };

std::string_view to_string(Placement kind);
/// Accepts "random-uniform" (alias "random"), "normal", "skewed", "grid".
Placement parse_placement(std::string_view name);

/// How nodes are scattered over the deployment area.
///
/// Grid placement uses square cells of side min(width/cols, height/rows) with
/// nodes at cell centres, so a 25x40 grid over 1 km^2 has 25 m spacing.
struct PlacementSpec {
  Placement kind = Placement::kRandomUniform;
  std::size_t n = 1000;
  Area area{};
  std::uint64_t seed = 1;
  double normal_mean = 500.0;
  double normal_std = 250.0;
  double skew_lambda = 2.0;
  std::size_t grid_rows = 25;
  std::size_t grid_cols = 40;

  /// Throws ConfigError.
  void validate() const;
  /// Distance between adjacent grid nodes (grid placement only).
  double grid_spacing() const;
};

enum class EdgeKind { kPhysical, kShortcut };

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  EdgeKind kind = EdgeKind::kPhysical;
  friend bool operator==(const Edge&, const Edge&) = default;
};

enum class EdgeFilter { kPhysicalOnly, kAll };

/// Node positions plus an undirected simple graph split into physical
/// (radio) links and logical shortcut links.
///
/// A graph built from positions has a physical edge between u != v exactly
/// when their distance is <= range. Shortcut edges never duplicate a
/// physical edge. Rewiring may later remove physical edges, after which the
/// range predicate only holds in the "edge implies in range" direction.
class SpatialGraph {
 public:
  SpatialGraph() = default;

  /// Unit-disk graph over the given positions.
  SpatialGraph(std::vector<Point> positions, Area area, double range);

  /// Arbitrary graph with explicit edges (positions all at the origin).
  /// Intended for abstract test topologies and deserialization.
  static SpatialGraph from_edges(std::size_t n, std::span<const Edge> edges);
  static SpatialGraph from_edges(std::vector<Point> positions, Area area,
                                 double range, std::span<const Edge> edges);

  std::size_t size() const { return positions_.size(); }
  bool empty() const { return positions_.empty(); }
  const std::vector<Point>& positions() const { return positions_; }
  Point position(NodeId u) const { return positions_[u]; }
  const Area& area() const { return area_; }
  double range() const { return range_; }

  std::span<const NodeId> physical_neighbors(NodeId u) const {
    return physical_[u];
  }
  std::span<const NodeId> shortcut_neighbors(NodeId u) const {
    return shortcut_[u];
  }
  std::size_t degree(NodeId u) const {
    return physical_[u].size() + shortcut_[u].size();
  }
  /// Physical and shortcut neighbours, ascending.
  std::vector<NodeId> neighbors(NodeId u) const;

  bool has_edge(NodeId u, NodeId v) const;
  bool has_physical_edge(NodeId u, NodeId v) const;

  /// Adds an edge. Returns false for self-loops or existing edges.
  bool add_edge(NodeId u, NodeId v, EdgeKind kind);
  /// Adds a logical link.
  bool add_shortcut(NodeId u, NodeId v) { return add_edge(u, v, EdgeKind::kShortcut); }
  /// Removes an edge of either kind. Returns false if absent.
  bool remove_edge(NodeId u, NodeId v);

  std::size_t physical_edge_count() const { return physical_edges_; }
  std::size_t shortcut_edge_count() const { return shortcut_edges_; }
  std::size_t edge_count() const { return physical_edges_ + shortcut_edges_; }

  /// All edges with u < v, sorted lexicographically.
  std::vector<Edge> edges() const;

  /// Subgraph induced by `nodes` (ascending order), re-indexed densely in
  /// that order. Edge kinds are preserved.
  SpatialGraph induced_subgraph(std::span<const NodeId> nodes) const;

  friend bool operator==(const SpatialGraph&, const SpatialGraph&) = default;

 private:
  void check_node(NodeId u) const;

  std::vector<Point> positions_;
  Area area_{};
  double range_ = 0.0;
  std::vector<std::vector<NodeId>> physical_;
  std::vector<std::vector<NodeId>> shortcut_;
  std::size_t physical_edges_ = 0;
  std::size_t shortcut_edges_ = 0;
};

/// Deterministic node placement for a validated spec.
std::vector<Point> place_nodes(const PlacementSpec& spec);

/// Places nodes per `spec` and connects every pair within `range`.
/// Throws ConfigError on an invalid spec or non-positive range.
SpatialGraph generate_topology(const PlacementSpec& spec, double range);

/// Reusable breadth-first search scratch space. Resetting between runs only
/// touches the nodes reached by the previous run.
class Bfs {
 public:
  explicit Bfs(std::size_t n = 0);

  /// Searches from `src`, not expanding past `limit` hops.
  void run(const SpatialGraph& g, NodeId src, EdgeFilter filter,
           Hops limit = kNoHopLimit);

  Hops hops(NodeId v) const { return dist_[v]; }
  bool reached(NodeId v) const { return dist_[v] != kUnreachable; }
  /// Nodes reached by the last run, in non-decreasing hop order.
  std::span<const NodeId> order() const { return order_; }
  /// Shortest path src..v found by the last run; empty if v was not reached.
  std::vector<NodeId> path_to(NodeId v) const;

 private:
  std::vector<Hops> dist_;
  std::vector<NodeId> parent_;
  std::vector<NodeId> order_;
};

/// Hop count from `src` to every node.
std::vector<Hops> hop_distances(const SpatialGraph& g, NodeId src,
                                bool use_shortcuts = true);

/// Connected components (over all edges), each sorted ascending, ordered by
/// their smallest member.
std::vector<std::vector<NodeId>> connected_components(const SpatialGraph& g);

/// Largest connected component; ties go to the component holding the
/// smallest NodeId. Empty for an empty graph.
std::vector<NodeId> largest_component(const SpatialGraph& g);

/// The largest component as its own re-indexed graph.
SpatialGraph largest_component_subgraph(const SpatialGraph& g);

}  // namespace swnet
