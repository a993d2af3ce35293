#include "swnet/metrics.hpp"

#include <algorithm>
#include <vector>

#include "swnet/error.hpp"

namespace swnet {

namespace {

// Counts adjacent neighbour pairs of u using a caller-owned marker array
// (all false on entry and on exit).
double local_clustering_marked(const SpatialGraph& g, NodeId u, std::vector<char>& mark) {
  const auto nbrs = g.neighbors(u);
  const std::size_t k = nbrs.size();
  if (k < 2) return 0.0;
  for (NodeId v : nbrs) mark[v] = 1;
  std::size_t links = 0;
  for (NodeId v : nbrs) {
    for (NodeId w : g.physical_neighbors(v))
      if (w > v && mark[w]) ++links;
    for (NodeId w : g.shortcut_neighbors(v))
      if (w > v && mark[w]) ++links;
  }
  for (NodeId v : nbrs) mark[v] = 0;
  return static_cast<double>(links) / (static_cast<double>(k) * static_cast<double>(k - 1) / 2.0);
}

}  // namespace

double local_clustering(const SpatialGraph& g, NodeId u) {
  std::vector<char> mark(g.size(), 0);
  return local_clustering_marked(g, u, mark);
}

double clustering_coefficient(const SpatialGraph& g) {
  if (g.empty()) throw UndefinedInput("clustering coefficient of an empty graph");
  std::vector<char> mark(g.size(), 0);
  double sum = 0.0;
  for (NodeId u = 0; u < g.size(); ++u) sum += local_clustering_marked(g, u, mark);
  return sum / static_cast<double>(g.size());
}

GraphStats path_length_stats(const SpatialGraph& g) {
  GraphStats s;
  const auto comp = largest_component(g);
  s.component_size = comp.size();
  if (comp.size() < 2) return s;

  Bfs bfs(g.size());
  std::uint64_t total = 0;
  std::uint64_t ordered_pairs = 0;
  Hops longest = 0;
  for (NodeId src : comp) {
    bfs.run(g, src, EdgeFilter::kAll);
    for (NodeId v : bfs.order()) {
      const Hops h = bfs.hops(v);
      total += static_cast<std::uint64_t>(h);
      longest = std::max(longest, h);
    }
    ordered_pairs += bfs.order().size() - 1;
  }
  s.avg_path_length = static_cast<double>(total) / static_cast<double>(ordered_pairs);
  s.max_path_length = longest;
  s.diameter = longest;
  s.reachable_pairs = ordered_pairs / 2;
  return s;
}

GraphStats graph_stats(const SpatialGraph& g) {
  GraphStats s = path_length_stats(g);
  s.clustering = clustering_coefficient(g);
  return s;
}

NormalizedRatios normalized_ratios(const GraphStats& base, const GraphStats& modified) {
  if (base.avg_path_length <= 0.0 || base.max_path_length <= 0)
    throw UndefinedInput("baseline path statistics must be positive");
  NormalizedRatios r;
  r.l_ratio = modified.avg_path_length / base.avg_path_length;
  r.m_ratio = static_cast<double>(modified.max_path_length) /
              static_cast<double>(base.max_path_length);
  if (base.clustering > 0.0) {
    r.c_ratio = modified.clustering / base.clustering;
    r.cl = *r.c_ratio / r.l_ratio;
  }
  return r;
}

}  // namespace swnet
