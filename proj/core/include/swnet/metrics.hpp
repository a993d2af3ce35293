#pragma once

#include <cstdint>
#include <optional>

#include "swnet/spatial_graph.hpp"

namespace swnet {

/// Small-world statistics of one graph. Path statistics are taken over the
/// largest connected component; clustering over all nodes.
struct GraphStats {
  double clustering = 0.0;        // C
  double avg_path_length = 0.0;   // L
  Hops max_path_length = 0;       // m
  Hops diameter = 0;              // D (equals m on a single component)
  std::uint64_t reachable_pairs = 0;  // unordered pairs inside the component
  std::size_t component_size = 0;
};

/// Fraction of a node's neighbour pairs that are adjacent; 0 for degree < 2.
double local_clustering(const SpatialGraph& g, NodeId u);

/// Mean local clustering over every node, degree < 2 nodes counting as 0.
/// Uses physical and shortcut edges. Throws UndefinedInput on an empty graph.
double clustering_coefficient(const SpatialGraph& g);

/// BFS from every node of the largest component. Leaves `clustering` at 0.
GraphStats path_length_stats(const SpatialGraph& g);

/// Clustering plus path statistics.
GraphStats graph_stats(const SpatialGraph& g);

/// Ratios against a baseline. C_ratio and CL are absent when C(0) = 0.
struct NormalizedRatios {
  double l_ratio = 1.0;
  double m_ratio = 1.0;
  std::optional<double> c_ratio;
  std::optional<double> cl;
};

NormalizedRatios normalized_ratios(const GraphStats& base, const GraphStats& modified);

}  // namespace swnet
