#pragma once

#include <cstdint>
#include <iosfwd>

#include "swnet/spatial_graph.hpp"

namespace swnet {

// Plain-text graph format:
//
//   swnet-graph n=<n> width=<w> height=<h> range=<r> seed=<seed>
//   node <id> <x> <y>          (ascending id)
//   edge <u> <v> phys|shortcut (u < v, lexicographic)
//
// Coordinates are written in shortest round-trip form.

struct GraphFile {
  SpatialGraph graph;
  std::uint64_t seed = 0;
};

void write_graph(std::ostream& out, const SpatialGraph& g, std::uint64_t seed);

/// Throws ConfigError on malformed input.
GraphFile read_graph(std::istream& in);

}  // namespace swnet
