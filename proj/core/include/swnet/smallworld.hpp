#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "swnet/metrics.hpp"
#include "swnet/spatial_graph.hpp"
#include "swnet/stats.hpp"

namespace swnet {

enum class ShortcutMode { kRewire, kAdd };

std::string_view to_string(ShortcutMode mode);
ShortcutMode parse_shortcut_mode(std::string_view name);

/// Amount of links to touch, as a fraction of the current edge count...
struct LinkFraction {
  double value = 0.0;
};
/// ...or as an absolute number.
struct LinkCount {
  std::size_t value = 0;
};
using LinkAmount = std::variant<LinkFraction, LinkCount>;

/// Which hop distances a new shortcut endpoint may lie at, measured from the
/// chosen source on the graph as modified so far.
struct HopConstraint {
  enum class Kind { kUnrestricted, kRange, kExact };

  Kind kind = Kind::kUnrestricted;
  Hops r = 0;

  static HopConstraint unrestricted() { return {}; }
  /// Any hop distance in [2, r].
  static HopConstraint range(Hops r) { return {Kind::kRange, r}; }
  /// Exactly r hops.
  static HopConstraint exact(Hops r) { return {Kind::kExact, r}; }

  bool admits(Hops h) const;
};

struct ShortcutPlan {
  ShortcutMode mode = ShortcutMode::kAdd;
  LinkAmount amount = LinkCount{0};
  HopConstraint constraint;
  std::uint64_t seed = 1;
  /// Fresh sources tried before a link is counted as skipped.
  std::size_t max_source_retries = 64;

  /// Throws ConfigError.
  void validate() const;
  /// Number of link operations for a graph with `edges` edges
  /// (round(p * edges) for a fraction).
  std::size_t link_count(std::size_t edges) const;
};

struct ShortcutOutcome {
  SpatialGraph graph;
  std::size_t applied = 0;
  std::size_t skipped = 0;
};

/// Rewire mode: repeatedly picks a random node and one of its neighbours,
/// drops that link and reconnects the node to a random non-neighbour
/// satisfying the constraint (edge count is preserved). Add mode: appends
/// shortcut edges between a random source and a random admissible endpoint.
ShortcutOutcome apply_shortcuts(const SpatialGraph& g, const ShortcutPlan& plan);

struct SweepRow {
  double x = 0.0;  // swept variable (p or r)
  Summary l_ratio;
  Summary m_ratio;
  std::optional<Summary> c_ratio;
  std::optional<Summary> cl;
  std::optional<double> cl_normalized;
  std::size_t skipped = 0;  // total over seeds
  std::size_t seeds = 0;
};

struct SweepResult {
  GraphStats base;  // statistics of the unmodified largest component
  std::vector<SweepRow> rows;
};

/// Rewiring / link-addition sweep over link fractions. The experiment runs
/// on the largest component of `g`; each (p, seed) pair is one job.
SweepResult rewiring_sweep(const SpatialGraph& g, ShortcutMode mode,
                           std::span<const double> p_values,
                           std::span<const std::uint64_t> seeds, std::size_t jobs = 1);

/// Adds k shortcuts whose far endpoint lies in [2, r] hops, for each r.
SweepResult contact_distance_sweep(const SpatialGraph& g, std::size_t k,
                                   std::span<const Hops> r_values,
                                   std::span<const std::uint64_t> seeds,
                                   std::size_t jobs = 1);

/// Adds k shortcuts whose far endpoint lies at exactly r hops, for each r.
SweepResult exact_distance_sweep(const SpatialGraph& g, std::size_t k,
                                 std::span<const Hops> r_values,
                                 std::span<const std::uint64_t> seeds,
                                 std::size_t jobs = 1);

/// 2, 3, ..., D for the largest component of g.
std::vector<Hops> hop_range_to_diameter(const GraphStats& base);

/// Smallest swept x (divided by `diameter`) after which no later row
/// lowers the mean L ratio by `threshold` or more.
std::optional<double> saturation_knee(const SweepResult& sweep, Hops diameter,
                                      double threshold = 0.03);

/// Row with the smallest mean L ratio.
const SweepRow& argmin_l_ratio(const SweepResult& sweep);

/// Row with the largest normalized C/L; nullopt when C/L is undefined.
std::optional<SweepRow> argmax_cl(const SweepResult& sweep);

/// H(d) = 1 + 1/2 + ... + 1/d, summed exactly.
double harmonic_number(Hops d);

/// Expected contact hop when nodes at hop h are chosen with weight h^-2 and
/// there are ~4h of them per hop: D / H(D). Throws ConfigError for D < 1.
double kleinberg_expected_hop(Hops d);

/// Expected contact hop seen from `src` when each node at hop h has weight
/// 1/h^2, i.e. hop h has weight count(h)/h^2. Physical and shortcut edges
/// both count. Returns 0 for an isolated source.
double hop_expectation_from(const SpatialGraph& g, NodeId src);

struct HopExpectation {
  double mean_fraction = 0.0;  // mean over sampled sources of E[hop] / D
  double min_fraction = 0.0;   // min / max over per-seed means
  double max_fraction = 0.0;
  Hops diameter = 0;
  std::size_t sources = 0;
};

/// hop_expectation_from / D over `sources_per_seed` random sources of the
/// largest component per seed (every node when sources_per_seed >= n).
HopExpectation simulated_hop_expectation(const SpatialGraph& g,
                                         std::span<const std::uint64_t> seeds,
                                         std::size_t sources_per_seed = 50);

}  // namespace swnet
