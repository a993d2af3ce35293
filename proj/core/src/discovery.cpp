#include "swnet/discovery.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "swnet/error.hpp"
#include "swnet/parallel.hpp"
#include "swnet/random.hpp"

namespace swnet {

void DiscoveryConfig::validate() const {
  if (zone_radius < 1) throw ConfigError("zone radius R must be >= 1");
  if (contact_distance < 2) throw ConfigError("contact distance r must be >= 2");
  if (contact_max < contact_distance) throw ConfigError("r_max must be >= r");
  if (contact_distance <= zone_radius)
    throw ConfigError("contact distance r=" + std::to_string(contact_distance) +
                      " must exceed zone radius R=" + std::to_string(zone_radius));
  if (query_depth < 0) throw ConfigError("query depth must be >= 0");
  if (contacts_per_node.has_value() == total_contacts.has_value())
    throw ConfigError("set exactly one of contacts_per_node / total_contacts");
}

bool ZoneTable::contains(NodeId v) const {
  return std::binary_search(members.begin(), members.end(), v);
}

std::optional<Hops> ZoneTable::hops_to(NodeId v) const {
  auto it = std::lower_bound(members.begin(), members.end(), v);
  if (it == members.end() || *it != v) return std::nullopt;
  return member_hops[static_cast<std::size_t>(it - members.begin())];
}

namespace {

ZoneTable zone_from_bfs(const Bfs& bfs, NodeId owner, Hops radius) {
  ZoneTable z;
  z.owner = owner;
  z.radius = radius;
  z.members.assign(bfs.order().begin(), bfs.order().end());
  std::sort(z.members.begin(), z.members.end());
  z.member_hops.reserve(z.members.size());
  for (NodeId v : z.members) {
    z.member_hops.push_back(bfs.hops(v));
    if (bfs.hops(v) == radius) z.border.push_back(v);
  }
  return z;
}

}  // namespace

ZoneTable build_zone(const SpatialGraph& g, NodeId owner, Hops radius) {
  if (radius < 1) throw ConfigError("zone radius must be >= 1");
  Bfs bfs(g.size());
  bfs.run(g, owner, EdgeFilter::kPhysicalOnly, radius);
  return zone_from_bfs(bfs, owner, radius);
}

Zones build_zones(const SpatialGraph& g, Hops radius) {
  if (radius < 1) throw ConfigError("zone radius must be >= 1");
  Zones zones;
  zones.reserve(g.size());
  Bfs bfs(g.size());
  for (NodeId u = 0; u < g.size(); ++u) {
    bfs.run(g, u, EdgeFilter::kPhysicalOnly, radius);
    zones.push_back(zone_from_bfs(bfs, u, radius));
  }
  return zones;
}

std::size_t ContactAssignment::pair_count() const {
  std::size_t n = 0;
  for (const auto& c : contacts) n += c.size();
  return n;
}

ContactAssignment assign_contacts(const SpatialGraph& g, const Zones& zones,
                                  const DiscoveryConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  const std::size_t n = g.size();
  ContactAssignment out;
  out.contacts.resize(n);
  if (n == 0) return out;

  Rng rng = make_rng(seed, 0xc0ffee);
  Bfs bfs(n);
  auto candidates_of = [&](NodeId s) {
    bfs.run(g, s, EdgeFilter::kPhysicalOnly, cfg.contact_max);
    std::vector<NodeId> cand;
    for (NodeId v : bfs.order()) {
      const Hops h = bfs.hops(v);
      if (h < cfg.contact_distance || h > cfg.contact_max) continue;
      if (!zones.empty() && zones[s].contains(v)) continue;
      cand.push_back(v);
    }
    std::sort(cand.begin(), cand.end());
    return cand;
  };

  if (cfg.contacts_per_node) {
    const std::size_t want = *cfg.contacts_per_node;
    if (want == 0) return out;
    for (NodeId s = 0; s < n; ++s) {
      auto cand = candidates_of(s);
      if (cand.empty()) {
        ++out.starved;
        continue;
      }
      const std::size_t take = std::min(want, cand.size());
      // Partial Fisher-Yates: the first `take` slots become a uniform sample.
      for (std::size_t i = 0; i < take; ++i)
        std::swap(cand[i], cand[i + uniform_index(rng, cand.size() - i)]);
      cand.resize(take);
      std::sort(cand.begin(), cand.end());
      out.contacts[s] = std::move(cand);
    }
    return out;
  }

  const std::size_t total = *cfg.total_contacts;
  std::vector<std::optional<std::vector<NodeId>>> cache(n);
  std::size_t placed = 0;
  for (std::size_t draw = 0; placed < total && draw < 8 * total; ++draw) {
    const auto s = static_cast<NodeId>(uniform_index(rng, n));
    if (!cache[s]) cache[s] = candidates_of(s);
    auto& cand = *cache[s];
    if (cand.empty()) {
      ++out.starved;
      continue;
    }
    const std::size_t pick = uniform_index(rng, cand.size());
    const NodeId c = cand[pick];
    cand.erase(cand.begin() + static_cast<std::ptrdiff_t>(pick));
    auto& list = out.contacts[s];
    list.insert(std::upper_bound(list.begin(), list.end(), c), c);
    ++placed;
  }
  return out;
}

QueryOutcome execute_query(NodeId source, NodeId target, const Zones& zones,
                           const ContactAssignment& contacts, Hops query_depth,
                           bool share_zone_contacts) {
  QueryOutcome out;
  if (zones[source].contains(target)) {
    out.success = true;
    out.degrees = 0;
    return out;
  }
  std::vector<char> queried(zones.size(), 0);
  queried[source] = 1;
  std::vector<NodeId> frontier{source};
  std::vector<NodeId> next;
  auto offer = [&](NodeId c) {
    if (!queried[c]) {
      queried[c] = 1;
      next.push_back(c);
    }
  };
  for (Hops level = 1; level <= query_depth && !frontier.empty(); ++level) {
    next.clear();
    for (NodeId owner : frontier) {
      if (share_zone_contacts) {
        for (NodeId m : zones[owner].members)
          for (NodeId c : contacts.contacts[m]) offer(c);
      } else {
        for (NodeId c : contacts.contacts[owner]) offer(c);
      }
    }
    for (NodeId c : next) {
      ++out.contacts_queried;
      if (zones[c].contains(target)) {
        out.success = true;
        out.degrees = level;
        return out;
      }
    }
    frontier.swap(next);
  }
  return out;
}

std::vector<ReachabilityCell> reachability_experiment(const SpatialGraph& g,
                                                      const ReachabilityGrid& grid,
                                                      std::span<const std::uint64_t> seeds,
                                                      std::size_t jobs) {
  if (grid.zone_radii.empty() || grid.query_depths.empty())
    throw ConfigError("reachability grid must be nonempty");
  if (seeds.empty()) throw ConfigError("reachability experiment needs at least one seed");
  const Hops max_radius = *std::max_element(grid.zone_radii.begin(), grid.zone_radii.end());
  {
    DiscoveryConfig probe = grid.base;
    probe.zone_radius = max_radius;
    probe.validate();
  }
  for (Hops qd : grid.query_depths)
    if (qd < 0) throw ConfigError("query depth must be >= 0");

  const SpatialGraph base = largest_component_subgraph(g);
  const std::size_t n = base.size();
  if (n < 2) throw ConfigError("reachability experiment needs at least two connected nodes");

  std::vector<Zones> zones_by_radius(grid.zone_radii.size());
  parallel_for(grid.zone_radii.size(), jobs,
               [&](std::size_t i) { zones_by_radius[i] = build_zones(base, grid.zone_radii[i]); });
  const Zones exclusion = build_zones(base, max_radius);

  const std::size_t rows = grid.zone_radii.size() * grid.query_depths.size();
  // [seed][cell] -> (unreachability, mean contacts queried, pairs)
  struct SeedCell {
    double unreachable = 0.0;
    double queried = 0.0;
  };
  std::vector<std::vector<SeedCell>> per_seed(seeds.size(), std::vector<SeedCell>(rows));
  std::vector<double> pairs(seeds.size(), 0.0);

  parallel_for(seeds.size(), jobs, [&](std::size_t si) {
    const auto assignment = assign_contacts(base, exclusion, grid.base, seeds[si]);
    pairs[si] = static_cast<double>(assignment.pair_count());

    Rng rng = make_rng(seeds[si], 0x9e7);
    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), NodeId{0});
    std::shuffle(order.begin(), order.end(), rng);
    const std::size_t source_count = std::min(grid.sources, n);
    std::vector<std::pair<NodeId, NodeId>> queries;
    for (std::size_t i = 0; i < source_count; ++i) {
      const NodeId s = order[i];
      for (std::size_t t = 0; t < grid.targets_per_source; ++t) {
        NodeId target = s;
        while (target == s) target = static_cast<NodeId>(uniform_index(rng, n));
        queries.emplace_back(s, target);
      }
    }

    for (std::size_t ri = 0; ri < grid.zone_radii.size(); ++ri) {
      for (std::size_t qi = 0; qi < grid.query_depths.size(); ++qi) {
        std::size_t failed = 0;
        std::size_t queried = 0;
        for (const auto& [s, t] : queries) {
          const auto q = execute_query(s, t, zones_by_radius[ri], assignment,
                                       grid.query_depths[qi], grid.base.share_zone_contacts);
          if (!q.success) ++failed;
          queried += q.contacts_queried;
        }
        const double total = static_cast<double>(queries.size());
        per_seed[si][ri * grid.query_depths.size() + qi] = {
            static_cast<double>(failed) / total, static_cast<double>(queried) / total};
      }
    }
  });

  std::vector<ReachabilityCell> cells;
  cells.reserve(rows);
  const double mean_pairs =
      std::accumulate(pairs.begin(), pairs.end(), 0.0) / static_cast<double>(pairs.size());
  for (std::size_t ri = 0; ri < grid.zone_radii.size(); ++ri) {
    for (std::size_t qi = 0; qi < grid.query_depths.size(); ++qi) {
      const std::size_t idx = ri * grid.query_depths.size() + qi;
      ReachabilityCell cell;
      cell.zone_radius = grid.zone_radii[ri];
      cell.query_depth = grid.query_depths[qi];
      cell.contact_distance = grid.base.contact_distance;
      cell.contacts = mean_pairs;
      double queried = 0.0;
      for (std::size_t si = 0; si < seeds.size(); ++si) {
        cell.per_seed.push_back(per_seed[si][idx].unreachable);
        queried += per_seed[si][idx].queried;
      }
      cell.unreachability = summarize(cell.per_seed);
      cell.mean_contacts_queried = queried / static_cast<double>(seeds.size());
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

}  // namespace swnet
