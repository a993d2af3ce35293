#include "swnet/smallworld.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

#include "swnet/error.hpp"
#include "swnet/parallel.hpp"
#include "swnet/random.hpp"

namespace swnet {

std::string_view to_string(ShortcutMode mode) {
  return mode == ShortcutMode::kRewire ? "rewire" : "add";
}

ShortcutMode parse_shortcut_mode(std::string_view name) {
  if (name == "rewire") return ShortcutMode::kRewire;
  if (name == "add") return ShortcutMode::kAdd;
  throw ConfigError("unknown shortcut mode '" + std::string(name) + "'");
}

bool HopConstraint::admits(Hops h) const {
  switch (kind) {
    case Kind::kUnrestricted:
      return true;
    case Kind::kRange:
      return h >= 2 && h <= r;
    case Kind::kExact:
      return h == r;
  }
  return false;
}

void ShortcutPlan::validate() const {
  if (const auto* f = std::get_if<LinkFraction>(&amount)) {
    if (!(f->value >= 0.0 && f->value <= 1.0))
      throw ConfigError("link fraction must lie in [0, 1]");
  }
  if (constraint.kind != HopConstraint::Kind::kUnrestricted && constraint.r < 2)
    throw ConfigError("hop constraint needs r >= 2");
}

std::size_t ShortcutPlan::link_count(std::size_t edges) const {
  if (const auto* c = std::get_if<LinkCount>(&amount)) return c->value;
  return static_cast<std::size_t>(
      std::llround(std::get<LinkFraction>(amount).value * static_cast<double>(edges)));
}

namespace {

constexpr NodeId kNone = static_cast<NodeId>(-1);

// Picks a far endpoint for `src` under `constraint`, or kNone. `exclude` is
// an extra node that may not be chosen (the detached endpoint when rewiring).
NodeId pick_endpoint(const SpatialGraph& g, NodeId src, const HopConstraint& constraint,
                     NodeId exclude, Bfs& bfs, std::vector<NodeId>& scratch, Rng& rng) {
  const std::size_t n = g.size();
  if (constraint.kind == HopConstraint::Kind::kUnrestricted) {
    // Rejection sampling first; fall back to enumeration for dense nodes.
    for (int attempt = 0; attempt < 32; ++attempt) {
      const auto t = static_cast<NodeId>(uniform_index(rng, n));
      if (t != src && t != exclude && !g.has_edge(src, t)) return t;
    }
    scratch.clear();
    for (NodeId t = 0; t < n; ++t)
      if (t != src && t != exclude && !g.has_edge(src, t)) scratch.push_back(t);
    return scratch.empty() ? kNone : scratch[uniform_index(rng, scratch.size())];
  }
  bfs.run(g, src, EdgeFilter::kAll, constraint.r);
  scratch.clear();
  for (NodeId t : bfs.order()) {
    const Hops h = bfs.hops(t);
    if (h >= 2 && t != exclude && constraint.admits(h)) scratch.push_back(t);
  }
  if (scratch.empty()) return kNone;
  return scratch[uniform_index(rng, scratch.size())];
}

}  // namespace

ShortcutOutcome apply_shortcuts(const SpatialGraph& g, const ShortcutPlan& plan) {
  plan.validate();
  ShortcutOutcome out{g, 0, 0};
  SpatialGraph& work = out.graph;
  const std::size_t n = work.size();
  const std::size_t links = plan.link_count(g.edge_count());
  if (links == 0 || n < 2) {
    out.skipped = n < 2 ? links : 0;
    return out;
  }

  Rng rng = make_rng(plan.seed);
  Bfs bfs(n);
  std::vector<NodeId> scratch;

  for (std::size_t i = 0; i < links; ++i) {
    bool done = false;
    for (std::size_t attempt = 0; attempt <= plan.max_source_retries && !done; ++attempt) {
      const auto src = static_cast<NodeId>(uniform_index(rng, n));
      if (plan.mode == ShortcutMode::kAdd) {
        const NodeId t = pick_endpoint(work, src, plan.constraint, kNone, bfs, scratch, rng);
        if (t == kNone) continue;
        done = work.add_shortcut(src, t);
      } else {
        if (work.degree(src) == 0) continue;
        const auto nbrs = work.neighbors(src);
        const NodeId old = nbrs[uniform_index(rng, nbrs.size())];
        const bool was_physical = work.has_physical_edge(src, old);
        work.remove_edge(src, old);
        const NodeId t = pick_endpoint(work, src, plan.constraint, old, bfs, scratch, rng);
        if (t == kNone) {
          work.add_edge(src, old, was_physical ? EdgeKind::kPhysical : EdgeKind::kShortcut);
          continue;
        }
        done = work.add_shortcut(src, t);
      }
    }
    if (done) {
      ++out.applied;
    } else {
      ++out.skipped;
    }
  }
  return out;
}

namespace {

struct JobResult {
  NormalizedRatios ratios;
  std::size_t skipped = 0;
};

SweepResult run_sweep(const SpatialGraph& g, std::span<const double> xs,
                      std::span<const std::uint64_t> seeds, std::size_t jobs,
                      const std::function<ShortcutPlan(std::size_t, std::uint64_t)>& make_plan) {
  if (seeds.empty()) throw ConfigError("sweep needs at least one seed");
  if (!std::is_sorted(xs.begin(), xs.end()))
    throw ConfigError("swept values must be ascending");
  const SpatialGraph base = largest_component_subgraph(g);
  SweepResult result;
  result.base = graph_stats(base);

  const std::size_t cells = xs.size() * seeds.size();
  std::vector<JobResult> slots(cells);
  parallel_for(cells, jobs, [&](std::size_t job) {
    const std::size_t xi = job / seeds.size();
    const std::size_t si = job % seeds.size();
    const auto outcome = apply_shortcuts(base, make_plan(xi, seeds[si]));
    slots[job] = {normalized_ratios(result.base, graph_stats(outcome.graph)), outcome.skipped};
  });

  std::vector<double> l, m, c, cl;
  for (std::size_t xi = 0; xi < xs.size(); ++xi) {
    l.clear();
    m.clear();
    c.clear();
    cl.clear();
    SweepRow row;
    row.x = xs[xi];
    row.seeds = seeds.size();
    for (std::size_t si = 0; si < seeds.size(); ++si) {
      const auto& r = slots[xi * seeds.size() + si];
      l.push_back(r.ratios.l_ratio);
      m.push_back(r.ratios.m_ratio);
      if (r.ratios.c_ratio) c.push_back(*r.ratios.c_ratio);
      if (r.ratios.cl) cl.push_back(*r.ratios.cl);
      row.skipped += r.skipped;
    }
    row.l_ratio = summarize(l);
    row.m_ratio = summarize(m);
    if (!c.empty()) row.c_ratio = summarize(c);
    if (!cl.empty()) row.cl = summarize(cl);
    result.rows.push_back(row);
  }

  double best = 0.0;
  for (const auto& row : result.rows)
    if (row.cl) best = std::max(best, row.cl->mean);
  if (best > 0.0)
    for (auto& row : result.rows)
      if (row.cl) row.cl_normalized = row.cl->mean / best;
  return result;
}

std::vector<double> as_doubles(std::span<const Hops> values) {
  return {values.begin(), values.end()};
}

}  // namespace

SweepResult rewiring_sweep(const SpatialGraph& g, ShortcutMode mode,
                           std::span<const double> p_values,
                           std::span<const std::uint64_t> seeds, std::size_t jobs) {
  for (double p : p_values)
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("p values must lie in [0, 1]");
  return run_sweep(g, p_values, seeds, jobs, [&](std::size_t xi, std::uint64_t seed) {
    ShortcutPlan plan;
    plan.mode = mode;
    plan.amount = LinkFraction{p_values[xi]};
    plan.seed = seed;
    return plan;
  });
}

SweepResult contact_distance_sweep(const SpatialGraph& g, std::size_t k,
                                   std::span<const Hops> r_values,
                                   std::span<const std::uint64_t> seeds, std::size_t jobs) {
  const auto xs = as_doubles(r_values);
  return run_sweep(g, xs, seeds, jobs, [&](std::size_t xi, std::uint64_t seed) {
    ShortcutPlan plan;
    plan.amount = LinkCount{k};
    plan.constraint = HopConstraint::range(r_values[xi]);
    plan.seed = seed;
    return plan;
  });
}

SweepResult exact_distance_sweep(const SpatialGraph& g, std::size_t k,
                                 std::span<const Hops> r_values,
                                 std::span<const std::uint64_t> seeds, std::size_t jobs) {
  const auto xs = as_doubles(r_values);
  return run_sweep(g, xs, seeds, jobs, [&](std::size_t xi, std::uint64_t seed) {
    ShortcutPlan plan;
    plan.amount = LinkCount{k};
    plan.constraint = HopConstraint::exact(r_values[xi]);
    plan.seed = seed;
    return plan;
  });
}

std::vector<Hops> hop_range_to_diameter(const GraphStats& base) {
  std::vector<Hops> out;
  for (Hops r = 2; r <= base.diameter; ++r) out.push_back(r);
  return out;
}

std::optional<double> saturation_knee(const SweepResult& sweep, Hops diameter,
                                      double threshold) {
  if (sweep.rows.empty() || diameter <= 0) return std::nullopt;
  const auto& rows = sweep.rows;
  // suffix_min[i] = smallest mean L ratio over rows i+1..end
  std::vector<double> suffix_min(rows.size(), std::numeric_limits<double>::infinity());
  for (std::size_t i = rows.size() - 1; i-- > 0;)
    suffix_min[i] = std::min(suffix_min[i + 1], rows[i + 1].l_ratio.mean);
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].l_ratio.mean - suffix_min[i] < threshold)
      return rows[i].x / static_cast<double>(diameter);
  return std::nullopt;
}

const SweepRow& argmin_l_ratio(const SweepResult& sweep) {
  if (sweep.rows.empty()) throw UndefinedInput("empty sweep");
  return *std::min_element(sweep.rows.begin(), sweep.rows.end(),
                           [](const SweepRow& a, const SweepRow& b) {
                             return a.l_ratio.mean < b.l_ratio.mean;
                           });
}

std::optional<SweepRow> argmax_cl(const SweepResult& sweep) {
  std::optional<SweepRow> best;
  for (const auto& row : sweep.rows)
    if (row.cl && (!best || row.cl->mean > best->cl->mean)) best = row;
  return best;
}

double harmonic_number(Hops d) {
  double h = 0.0;
  for (Hops i = d; i >= 1; --i) h += 1.0 / static_cast<double>(i);
  return h;
}

double kleinberg_expected_hop(Hops d) {
  if (d < 1) throw ConfigError("diameter must be >= 1");
  return static_cast<double>(d) / harmonic_number(d);
}

double hop_expectation_from(const SpatialGraph& g, NodeId src) {
  Bfs bfs(g.size());
  bfs.run(g, src, EdgeFilter::kAll);
  std::vector<double> count;
  for (NodeId v : bfs.order()) {
    const auto h = static_cast<std::size_t>(bfs.hops(v));
    if (count.size() <= h) count.resize(h + 1, 0.0);
    count[h] += 1.0;
  }
  double weight = 0.0;
  double weighted_hop = 0.0;
  for (std::size_t h = 1; h < count.size(); ++h) {
    const double w = count[h] / static_cast<double>(h * h);
    weight += w;
    weighted_hop += w * static_cast<double>(h);
  }
  return weight > 0.0 ? weighted_hop / weight : 0.0;
}

HopExpectation simulated_hop_expectation(const SpatialGraph& g,
                                         std::span<const std::uint64_t> seeds,
                                         std::size_t sources_per_seed) {
  if (seeds.empty()) throw ConfigError("hop expectation needs at least one seed");
  const SpatialGraph base = largest_component_subgraph(g);
  HopExpectation out;
  out.diameter = path_length_stats(base).diameter;
  if (out.diameter == 0) return out;

  std::vector<NodeId> all(base.size());
  std::iota(all.begin(), all.end(), NodeId{0});
  double total = 0.0;
  out.min_fraction = std::numeric_limits<double>::infinity();
  out.max_fraction = 0.0;
  for (std::uint64_t seed : seeds) {
    std::vector<NodeId> sources = all;
    if (sources_per_seed < base.size()) {
      Rng rng = make_rng(seed, 0x4b1e);
      std::shuffle(sources.begin(), sources.end(), rng);
      sources.resize(sources_per_seed);
    }
    double seed_sum = 0.0;
    for (NodeId s : sources) {
      const double frac = hop_expectation_from(base, s) / static_cast<double>(out.diameter);
      seed_sum += frac;
      total += frac;
    }
    out.sources += sources.size();
    const double seed_mean = seed_sum / static_cast<double>(sources.size());
    out.min_fraction = std::min(out.min_fraction, seed_mean);
    out.max_fraction = std::max(out.max_fraction, seed_mean);
  }
  out.mean_fraction = total / static_cast<double>(out.sources);
  return out;
}

}  // namespace swnet
