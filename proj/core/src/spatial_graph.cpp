#include "swnet/spatial_graph.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "swnet/error.hpp"
#include "swnet/random.hpp"

namespace swnet {

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

std::string_view to_string(Placement kind) {
  switch (kind) {
    case Placement::kRandomUniform:
      return "random-uniform";
    case Placement::kNormal:
      return "normal";
    case Placement::kSkewed:
      return "skewed";
    case Placement::kGrid:
      return "grid";
  }
  return "unknown";
}

Placement parse_placement(std::string_view name) {
  if (name == "random-uniform" || name == "random") return Placement::kRandomUniform;
  if (name == "normal") return Placement::kNormal;
  if (name == "skewed") return Placement::kSkewed;
  if (name == "grid") return Placement::kGrid;
  throw ConfigError("unknown placement '" + std::string(name) + "'");
}

void PlacementSpec::validate() const {
  if (n == 0) throw ConfigError("placement needs at least one node");
  if (!(area.width > 0.0) || !(area.height > 0.0))
    throw ConfigError("placement area must have positive width and height");
  switch (kind) {
    case Placement::kNormal:
      if (!(normal_std > 0.0)) throw ConfigError("normal placement needs std > 0");
      break;
    case Placement::kSkewed:
      if (!(skew_lambda > 0.0)) throw ConfigError("skewed placement needs lambda > 0");
      break;
    case Placement::kGrid:
      if (grid_rows == 0 || grid_cols == 0 || grid_rows * grid_cols != n)
        throw ConfigError("grid rows x cols (" + std::to_string(grid_rows) + "x" +
                          std::to_string(grid_cols) + ") must equal n=" +
                          std::to_string(n));
      break;
    case Placement::kRandomUniform:
      break;
  }
}

double PlacementSpec::grid_spacing() const {
  return std::min(area.width / static_cast<double>(grid_cols),
                  area.height / static_cast<double>(grid_rows));
}

std::vector<Point> place_nodes(const PlacementSpec& spec) {
  spec.validate();
  Rng rng = make_rng(spec.seed);
  std::vector<Point> pts;
  pts.reserve(spec.n);
  const double w = spec.area.width;
  const double h = spec.area.height;

  switch (spec.kind) {
    case Placement::kRandomUniform: {
      std::uniform_real_distribution<double> ux(0.0, w);
      std::uniform_real_distribution<double> uy(0.0, h);
      for (std::size_t i = 0; i < spec.n; ++i) {
        const double x = ux(rng);
        pts.push_back({x, uy(rng)});
      }
      break;
    }
    case Placement::kNormal: {
      std::normal_distribution<double> nd(spec.normal_mean, spec.normal_std);
      auto draw = [&](double hi) {
        for (;;) {
          const double v = nd(rng);
          if (v >= 0.0 && v <= hi) return v;
        }
      };
      for (std::size_t i = 0; i < spec.n; ++i) {
        const double x = draw(w);
        pts.push_back({x, draw(h)});
      }
      break;
    }
    case Placement::kSkewed: {
      std::uniform_real_distribution<double> u01(0.0, 1.0);
      const double lambda = spec.skew_lambda;
      const double norm = 1.0 - std::exp(-lambda);
      auto warp = [&](double u, double extent) {
        return std::clamp(extent * (1.0 - std::exp(-lambda * u)) / norm, 0.0, extent);
      };
      for (std::size_t i = 0; i < spec.n; ++i) {
        const double x = warp(u01(rng), w);
        pts.push_back({x, warp(u01(rng), h)});
      }
      break;
    }
    case Placement::kGrid: {
      const double s = spec.grid_spacing();
      for (std::size_t r = 0; r < spec.grid_rows; ++r)
        for (std::size_t c = 0; c < spec.grid_cols; ++c)
          pts.push_back({(static_cast<double>(c) + 0.5) * s,
                         (static_cast<double>(r) + 0.5) * s});
      break;
    }
  }
  return pts;
}

namespace {

void insert_sorted(std::vector<NodeId>& list, NodeId v) {
  list.insert(std::upper_bound(list.begin(), list.end(), v), v);
}

bool erase_sorted(std::vector<NodeId>& list, NodeId v) {
  auto it = std::lower_bound(list.begin(), list.end(), v);
  if (it == list.end() || *it != v) return false;
  list.erase(it);
  return true;
}

bool contains_sorted(const std::vector<NodeId>& list, NodeId v) {
  return std::binary_search(list.begin(), list.end(), v);
}

}  // namespace

SpatialGraph::SpatialGraph(std::vector<Point> positions, Area area, double range)
    : positions_(std::move(positions)),
      area_(area),
      range_(range),
      physical_(positions_.size()),
      shortcut_(positions_.size()) {
  if (!(range > 0.0)) throw ConfigError("radio range must be positive");
  const std::size_t n = positions_.size();
  if (n == 0) return;

  // Bucket nodes into square cells of side >= range so only the 3x3
  // neighbourhood of a cell needs scanning.
  const double extent = std::max(area.width, area.height);
  const double cell = std::max(range, extent / 1024.0);
  const auto cells_x = static_cast<std::size_t>(std::floor(area.width / cell)) + 1;
  const auto cells_y = static_cast<std::size_t>(std::floor(area.height / cell)) + 1;
  auto cell_of = [&](Point p) {
    const auto cx = std::min(cells_x - 1, static_cast<std::size_t>(std::max(0.0, p.x) / cell));
    const auto cy = std::min(cells_y - 1, static_cast<std::size_t>(std::max(0.0, p.y) / cell));
    return std::pair{cx, cy};
  };
  std::vector<std::vector<NodeId>> buckets(cells_x * cells_y);
  for (NodeId u = 0; u < n; ++u) {
    const auto [cx, cy] = cell_of(positions_[u]);
    buckets[cy * cells_x + cx].push_back(u);
  }
  for (NodeId u = 0; u < n; ++u) {
    const auto [cx, cy] = cell_of(positions_[u]);
    for (std::size_t dy = (cy == 0 ? 0 : cy - 1); dy <= std::min(cells_y - 1, cy + 1); ++dy) {
      for (std::size_t dx = (cx == 0 ? 0 : cx - 1); dx <= std::min(cells_x - 1, cx + 1); ++dx) {
        for (NodeId v : buckets[dy * cells_x + dx]) {
          if (v <= u) continue;
          if (distance(positions_[u], positions_[v]) <= range) {
            physical_[u].push_back(v);
            physical_[v].push_back(u);
            ++physical_edges_;
          }
        }
      }
    }
  }
  for (auto& list : physical_) std::sort(list.begin(), list.end());
}

SpatialGraph SpatialGraph::from_edges(std::size_t n, std::span<const Edge> edges) {
  return from_edges(std::vector<Point>(n), Area{}, 1.0, edges);
}

SpatialGraph SpatialGraph::from_edges(std::vector<Point> positions, Area area,
                                      double range, std::span<const Edge> edges) {
  SpatialGraph g;
  g.positions_ = std::move(positions);
  g.area_ = area;
  g.range_ = range;
  g.physical_.resize(g.positions_.size());
  g.shortcut_.resize(g.positions_.size());
  for (const Edge& e : edges) {
    g.check_node(e.u);
    g.check_node(e.v);
    if (e.u == e.v) throw ConfigError("self-loop on node " + std::to_string(e.u));
    if (!g.add_edge(e.u, e.v, e.kind))
      throw ConfigError("duplicate edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
  }
  return g;
}

void SpatialGraph::check_node(NodeId u) const {
  if (u >= positions_.size())
    throw ConfigError("node " + std::to_string(u) + " out of range");
}

std::vector<NodeId> SpatialGraph::neighbors(NodeId u) const {
  std::vector<NodeId> out;
  out.reserve(degree(u));
  std::merge(physical_[u].begin(), physical_[u].end(), shortcut_[u].begin(),
             shortcut_[u].end(), std::back_inserter(out));
  return out;
}

bool SpatialGraph::has_physical_edge(NodeId u, NodeId v) const {
  return contains_sorted(physical_[u], v);
}

bool SpatialGraph::has_edge(NodeId u, NodeId v) const {
  return contains_sorted(physical_[u], v) || contains_sorted(shortcut_[u], v);
}

bool SpatialGraph::add_edge(NodeId u, NodeId v, EdgeKind kind) {
  check_node(u);
  check_node(v);
  if (u == v || has_edge(u, v)) return false;
  auto& lists = kind == EdgeKind::kPhysical ? physical_ : shortcut_;
  insert_sorted(lists[u], v);
  insert_sorted(lists[v], u);
  ++(kind == EdgeKind::kPhysical ? physical_edges_ : shortcut_edges_);
  return true;
}

bool SpatialGraph::remove_edge(NodeId u, NodeId v) {
  check_node(u);
  check_node(v);
  if (erase_sorted(physical_[u], v)) {
    erase_sorted(physical_[v], u);
    --physical_edges_;
    return true;
  }
  if (erase_sorted(shortcut_[u], v)) {
    erase_sorted(shortcut_[v], u);
    --shortcut_edges_;
    return true;
  }
  return false;
}

std::vector<Edge> SpatialGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (NodeId u = 0; u < size(); ++u) {
    for (NodeId v : physical_[u])
      if (u < v) out.push_back({u, v, EdgeKind::kPhysical});
    for (NodeId v : shortcut_[u])
      if (u < v) out.push_back({u, v, EdgeKind::kShortcut});
  }
  std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
  return out;
}

SpatialGraph SpatialGraph::induced_subgraph(std::span<const NodeId> nodes) const {
  std::vector<NodeId> index(size(), static_cast<NodeId>(-1));
  std::vector<Point> pts;
  pts.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    check_node(nodes[i]);
    index[nodes[i]] = static_cast<NodeId>(i);
    pts.push_back(positions_[nodes[i]]);
  }
  std::vector<Edge> kept;
  for (const Edge& e : edges()) {
    const NodeId a = index[e.u];
    const NodeId b = index[e.v];
    if (a == static_cast<NodeId>(-1) || b == static_cast<NodeId>(-1)) continue;
    kept.push_back({std::min(a, b), std::max(a, b), e.kind});
  }
  return from_edges(std::move(pts), area_, range_, kept);
}

SpatialGraph generate_topology(const PlacementSpec& spec, double range) {
  if (!(range > 0.0)) throw ConfigError("radio range must be positive");
  return SpatialGraph(place_nodes(spec), spec.area, range);
}

Bfs::Bfs(std::size_t n) : dist_(n, kUnreachable), parent_(n, 0) {}

void Bfs::run(const SpatialGraph& g, NodeId src, EdgeFilter filter, Hops limit) {
  if (dist_.size() != g.size()) {
    dist_.assign(g.size(), kUnreachable);
    parent_.assign(g.size(), 0);
  } else {
    for (NodeId v : order_) dist_[v] = kUnreachable;
  }
  order_.clear();
  if (src >= g.size()) throw ConfigError("BFS source out of range");
  dist_[src] = 0;
  parent_[src] = src;
  order_.push_back(src);
  for (std::size_t head = 0; head < order_.size(); ++head) {
    const NodeId u = order_[head];
    const Hops du = dist_[u];
    if (du >= limit) continue;
    auto visit = [&](NodeId v) {
      if (dist_[v] == kUnreachable) {
        dist_[v] = du + 1;
        parent_[v] = u;
        order_.push_back(v);
      }
    };
    for (NodeId v : g.physical_neighbors(u)) visit(v);
    if (filter == EdgeFilter::kAll)
      for (NodeId v : g.shortcut_neighbors(u)) visit(v);
  }
}

std::vector<NodeId> Bfs::path_to(NodeId v) const {
  if (v >= dist_.size() || dist_[v] == kUnreachable) return {};
  std::vector<NodeId> path(static_cast<std::size_t>(dist_[v]) + 1);
  for (std::size_t i = path.size(); i-- > 0;) {
    path[i] = v;
    v = parent_[v];
  }
  return path;
}

std::vector<Hops> hop_distances(const SpatialGraph& g, NodeId src, bool use_shortcuts) {
  Bfs bfs(g.size());
  bfs.run(g, src, use_shortcuts ? EdgeFilter::kAll : EdgeFilter::kPhysicalOnly);
  std::vector<Hops> out(g.size());
  for (NodeId v = 0; v < g.size(); ++v) out[v] = bfs.hops(v);
  return out;
}

std::vector<std::vector<NodeId>> connected_components(const SpatialGraph& g) {
  std::vector<std::vector<NodeId>> comps;
  std::vector<bool> seen(g.size(), false);
  Bfs bfs(g.size());
  for (NodeId s = 0; s < g.size(); ++s) {
    if (seen[s]) continue;
    bfs.run(g, s, EdgeFilter::kAll);
    std::vector<NodeId> comp(bfs.order().begin(), bfs.order().end());
    for (NodeId v : comp) seen[v] = true;
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

std::vector<NodeId> largest_component(const SpatialGraph& g) {
  auto comps = connected_components(g);
  std::vector<NodeId> best;
  // Components arrive ordered by smallest member, so a strict comparison
  // keeps the earliest one on ties.
  for (auto& c : comps)
    if (c.size() > best.size()) best = std::move(c);
  return best;
}

SpatialGraph largest_component_subgraph(const SpatialGraph& g) {
  const auto nodes = largest_component(g);
  if (nodes.size() == g.size()) return g;
  return g.induced_subgraph(nodes);
}

}  // namespace swnet
