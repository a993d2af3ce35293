#include "runner.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "csv.hpp"
#include "swnet/contact_selection.hpp"
#include "swnet/discovery.hpp"
#include "swnet/error.hpp"
#include "swnet/metrics.hpp"
#include "swnet/mobility.hpp"
#include "swnet/parallel.hpp"
#include "swnet/random.hpp"
#include "swnet/smallworld.hpp"

namespace swnet::runner {

namespace fs = std::filesystem;

std::string TopologySpec::id() const {
  std::string kind(to_string(placement.kind));
  if (kind == "random-uniform") kind = "random";
  return format_number(range) + "-" + kind;
}

namespace {

// ---- parameter access ------------------------------------------------------

template <typename T>
T get_as(const Json& params, const char* key) {
  try {
    return params.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string("parameter '") + key + "' has the wrong type");
  }
}

Json merge_params(const Json& defaults, const Json& given, std::string_view experiment) {
  Json out = defaults;
  if (given.is_null()) return out;
  if (!given.is_object()) throw ConfigError("params must be an object");
  for (auto it = given.begin(); it != given.end(); ++it) {
    if (!defaults.contains(it.key()))
      throw ConfigError("unknown parameter '" + it.key() + "' for " + std::string(experiment));
    out[it.key()] = it.value();
  }
  return out;
}

MobilityConfig mobility_from(const Json& p, double v_max, std::uint64_t seed) {
  MobilityConfig mc;
  mc.v_max = v_max;
  mc.duration = get_as<double>(p, "duration");
  mc.tick = get_as<double>(p, "tick");
  mc.pause = get_as<double>(p, "pause");
  mc.seed = seed;
  mc.validate();
  return mc;
}

std::vector<NodeId> shuffled_nodes(std::size_t n, std::uint64_t seed, std::uint64_t stream) {
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  Rng rng = make_rng(seed, stream);
  std::shuffle(order.begin(), order.end(), rng);
  return order;
}

struct Context {
  const ExperimentSpec& spec;
  RunResult& result;

  fs::path file(std::string_view name) {
    fs::path p = spec.output_dir / name;
    result.outputs.push_back(p);
    return p;
  }
  SpatialGraph topology() const { return generate_topology(spec.topology.placement, spec.topology.range); }
};

// ---- experiments -----------------------------------------------------------

void run_topo_stats(Context& ctx) {
  const auto& spec = ctx.spec;
  std::vector<GraphStats> stats(spec.seeds.size());
  std::vector<std::size_t> edges(spec.seeds.size());
  parallel_for(spec.seeds.size(), spec.jobs, [&](std::size_t i) {
    PlacementSpec p = spec.topology.placement;
    p.seed = spec.seeds[i];
    const auto g = generate_topology(p, spec.topology.range);
    stats[i] = graph_stats(g);
    edges[i] = g.edge_count();
  });
  CsvWriter csv(ctx.file("stats.csv"),
                {"topology", "seed", "n", "edges", "C", "L", "m", "D", "reachable_pairs"});
  double c = 0, l = 0, m = 0;
  for (std::size_t i = 0; i < stats.size(); ++i) {
    const auto& s = stats[i];
    csv.cell(spec.topology.id()).cell(spec.seeds[i]).cell(spec.topology.placement.n);
    csv.cell(edges[i]).cell(s.clustering).cell(s.avg_path_length).cell(s.max_path_length);
    csv.cell(s.diameter).cell(s.reachable_pairs);
    csv.end_row();
    c += s.clustering;
    l += s.avg_path_length;
    m += s.max_path_length;
  }
  csv.close();
  const double k = static_cast<double>(stats.size());
  ctx.result.summary = {{"mean_C", c / k}, {"mean_L", l / k}, {"mean_m", m / k}};
}

void write_sweep_rows(CsvWriter& csv, const SweepResult& sweep, std::optional<std::size_t> k) {
  for (const auto& row : sweep.rows) {
    if (k) csv.cell(*k);
    csv.cell(row.x);
    csv.cell(row.l_ratio.mean).cell(row.l_ratio.stddev);
    csv.cell(row.m_ratio.mean).cell(row.m_ratio.stddev);
    if (row.c_ratio) {
      csv.cell(row.c_ratio->mean).cell(row.c_ratio->stddev);
    } else {
      csv.cell(kMissing).cell(kMissing);
    }
    if (row.cl) {
      csv.cell(row.cl->mean).cell(row.cl->stddev);
    } else {
      csv.cell(kMissing).cell(kMissing);
    }
    csv.cell(row.cl_normalized).cell(row.skipped).cell(row.seeds);
    csv.end_row();
  }
}

#define SWNET_SWEEP_COLUMNS                                                                   \
  "x", "l_ratio_mean", "l_ratio_std", "m_ratio_mean", "m_ratio_std", "c_ratio_mean",          \
      "c_ratio_std", "cl_mean", "cl_std", "cl_normalized", "skipped", "seeds"

void run_rewire_sweep(Context& ctx) {
  const auto& p = ctx.spec.params;
  const auto mode = parse_shortcut_mode(get_as<std::string>(p, "mode"));
  const auto ps = get_as<std::vector<double>>(p, "p");
  const auto sweep = rewiring_sweep(ctx.topology(), mode, ps, ctx.spec.seeds, ctx.spec.jobs);
  CsvWriter csv(ctx.file("sweep.csv"), {SWNET_SWEEP_COLUMNS});
  write_sweep_rows(csv, sweep, std::nullopt);
  csv.close();
  Json summary = {{"mode", to_string(mode)},
                  {"base_L", sweep.base.avg_path_length},
                  {"base_C", sweep.base.clustering}};
  if (auto best = argmax_cl(sweep)) summary["argmax_cl"] = best->x;
  ctx.result.summary = summary;
}

void run_distance_sweep(Context& ctx, bool exact) {
  const auto& p = ctx.spec.params;
  const auto ks = get_as<std::vector<std::size_t>>(p, "k");
  auto rs = get_as<std::vector<Hops>>(p, "r");
  if (ks.empty()) throw ConfigError("k list must be nonempty");
  const auto g = ctx.topology();
  const GraphStats base = graph_stats(largest_component_subgraph(g));
  if (rs.empty()) rs = hop_range_to_diameter(base);

  CsvWriter csv(ctx.file("sweep.csv"), {"k", SWNET_SWEEP_COLUMNS});
  CsvWriter knees(ctx.file(exact ? "argmin.csv" : "knee.csv"),
                  exact ? std::initializer_list<std::string_view>{"k", "D", "r_min", "r_min_over_D",
                                                                  "l_ratio_min", "l_ratio_at_max_r"}
                        : std::initializer_list<std::string_view>{"k", "D", "knee_r_over_D"});
  Json summary = Json::array();
  for (std::size_t k : ks) {
    const auto sweep = exact ? exact_distance_sweep(g, k, rs, ctx.spec.seeds, ctx.spec.jobs)
                             : contact_distance_sweep(g, k, rs, ctx.spec.seeds, ctx.spec.jobs);
    write_sweep_rows(csv, sweep, k);
    knees.cell(k).cell(base.diameter);
    if (exact) {
      const auto& best = argmin_l_ratio(sweep);
      const double ratio = best.x / static_cast<double>(base.diameter);
      knees.cell(best.x).cell(ratio).cell(best.l_ratio.mean);
      knees.cell(sweep.rows.back().l_ratio.mean);
      summary.push_back({{"k", k}, {"r_min_over_D", ratio}});
    } else {
      const auto knee = saturation_knee(sweep, base.diameter);
      knees.cell(knee);
      summary.push_back({{"k", k}, {"knee_r_over_D", knee ? Json(*knee) : Json()}});
    }
    knees.end_row();
  }
  csv.close();
  knees.close();
  ctx.result.summary = {{"D", base.diameter}, {"per_k", summary}};
}

void run_kleinberg(Context& ctx) {
  const auto& p = ctx.spec.params;
  const auto d_min = get_as<Hops>(p, "d_min");
  const auto d_max = get_as<Hops>(p, "d_max");
  if (d_min < 1 || d_max < d_min) throw ConfigError("need 1 <= d_min <= d_max");
  CsvWriter table(ctx.file("kleinberg.csv"), {"D", "H", "expected_hop", "fraction"});
  for (Hops d = d_min; d <= d_max; ++d) {
    const double e = kleinberg_expected_hop(d);
    table.cell(d).cell(harmonic_number(d)).cell(e).cell(e / d);
    table.end_row();
  }
  table.close();

  const auto sim = simulated_hop_expectation(ctx.topology(), ctx.spec.seeds,
                                             get_as<std::size_t>(p, "sources_per_seed"));
  CsvWriter csv(ctx.file("simulated.csv"),
                {"topology", "D", "mean_fraction", "min_fraction", "max_fraction", "sources"});
  csv.cell(ctx.spec.topology.id()).cell(sim.diameter).cell(sim.mean_fraction);
  csv.cell(sim.min_fraction).cell(sim.max_fraction).cell(sim.sources);
  csv.end_row();
  csv.close();
  ctx.result.summary = {{"simulated_fraction", sim.mean_fraction}, {"D", sim.diameter}};
}

void run_discovery(Context& ctx) {
  const auto& p = ctx.spec.params;
  ReachabilityGrid grid;
  grid.zone_radii = get_as<std::vector<Hops>>(p, "zone_radii");
  grid.query_depths = get_as<std::vector<Hops>>(p, "query_depths");
  grid.base.contact_distance = get_as<Hops>(p, "contact_distance");
  grid.base.contact_max = get_as<Hops>(p, "contact_max");
  if (!p.at("contacts_per_node").is_null())
    grid.base.contacts_per_node = get_as<std::size_t>(p, "contacts_per_node");
  if (!p.at("total_contacts").is_null())
    grid.base.total_contacts = get_as<std::size_t>(p, "total_contacts");
  grid.base.share_zone_contacts = get_as<bool>(p, "share_zone_contacts");
  grid.sources = get_as<std::size_t>(p, "sources");
  grid.targets_per_source = get_as<std::size_t>(p, "targets_per_source");

  const auto cells = reachability_experiment(ctx.topology(), grid, ctx.spec.seeds, ctx.spec.jobs);
  CsvWriter csv(ctx.file("reachability.csv"),
                {"R", "QD", "r", "contacts", "unreachability_mean", "unreachability_std",
                 "contacts_queried_mean"});
  Json summary = Json::object();
  for (const auto& c : cells) {
    csv.cell(c.zone_radius).cell(c.query_depth).cell(c.contact_distance).cell(c.contacts);
    csv.cell(c.unreachability.mean).cell(c.unreachability.stddev).cell(c.mean_contacts_queried);
    csv.end_row();
    if (c.zone_radius == 4 && c.query_depth == 4) summary["unreachability_R4_QD4"] = c.unreachability.mean;
  }
  csv.close();
  ctx.result.summary = summary;
}

std::vector<std::vector<NodeId>> tracked_borders(const SpatialGraph& g,
                                                 std::span<const NodeId> sources, Hops radius,
                                                 std::size_t track_count, std::uint64_t seed) {
  std::vector<std::vector<NodeId>> tracked;
  for (NodeId s : sources) {
    const auto zone = build_zone(g, s, radius);
    if (track_count == 0) {
      tracked.push_back(zone.border);
      continue;
    }
    const auto sel = select_candidates(s, zone, {SelectionKind::kBorder, track_count}, seed);
    std::vector<NodeId> nodes;
    for (const auto& r : sel.records) nodes.push_back(r.node);
    tracked.push_back(std::move(nodes));
  }
  return tracked;
}

void run_tracking(Context& ctx) {
  const auto& spec = ctx.spec;
  const auto& p = spec.params;
  const auto speeds = get_as<std::vector<double>>(p, "v_max");
  const auto radius = get_as<Hops>(p, "zone_radius");
  const auto source_count = get_as<std::size_t>(p, "sources");
  const auto track_count = get_as<std::size_t>(p, "track_count");
  if (speeds.empty()) throw ConfigError("v_max list must be nonempty");
  if (radius < 1) throw ConfigError("zone radius must be >= 1");
  const auto start = place_nodes(spec.topology.placement);
  const Area area = spec.topology.placement.area;
  const double range = spec.topology.range;

  std::vector<HopHistogram> hists(speeds.size());
  for (std::size_t vi = 0; vi < speeds.size(); ++vi) {
    std::vector<HopHistogram> per_seed(spec.seeds.size());
    parallel_for(spec.seeds.size(), spec.jobs, [&](std::size_t si) {
      const auto trace = simulate(start, area, mobility_from(p, speeds[vi], spec.seeds[si]));
      const auto snaps = snapshot_graphs(trace, range);
      auto order = shuffled_nodes(start.size(), spec.seeds[si], 0x50c);
      order.resize(std::min(source_count, order.size()));
      const auto tracked = tracked_borders(snaps.front(), order, radius, track_count, spec.seeds[si]);
      per_seed[si] = track_hop_histogram(snaps, order, tracked);
    });
    for (const auto& h : per_seed) {
      auto& agg = hists[vi];
      if (agg.counts.size() < h.counts.size()) agg.counts.resize(h.counts.size(), 0);
      for (std::size_t i = 0; i < h.counts.size(); ++i) agg.counts[i] += h.counts[i];
      agg.unreachable += h.unreachable;
    }
  }

  CsvWriter csv(ctx.file("histogram.csv"), {"hop", "fraction", "v_max", "protocol"});
  CsvWriter summary_csv(ctx.file("tracking_summary.csv"),
                        {"v_max", "samples", "fraction_4_9", "unreachable_fraction",
                         "tv_vs_first"});
  Json summary = Json::array();
  for (std::size_t vi = 0; vi < speeds.size(); ++vi) {
    const auto& h = hists[vi];
    for (Hops hop = 0; hop <= h.max_hop(); ++hop) {
      csv.cell(hop).cell(h.fraction(hop)).cell(speeds[vi]).cell("border");
      csv.end_row();
    }
    csv.cell(kUnreachable).cell(h.unreachable_fraction()).cell(speeds[vi]).cell("border");
    csv.end_row();
    const double tv = total_variation(hists.front(), h);
    summary_csv.cell(speeds[vi]).cell(h.samples()).cell(h.fraction_between(4, 9));
    summary_csv.cell(h.unreachable_fraction()).cell(tv);
    summary_csv.end_row();
    summary.push_back({{"v_max", speeds[vi]}, {"fraction_4_9", h.fraction_between(4, 9)},
                       {"tv_vs_first", tv}});
  }
  csv.close();
  summary_csv.close();
  ctx.result.summary = summary;
}

#define SWNET_SELECTION_COLUMNS                                                            \
  "protocol", "PB", "LEB", "UEB", "v_max", "seed", "sources", "enrolled", "promoted",         \
      "persistence", "persistence_upper", "promotion_time", "conversion", "avg_overlap",      \
      "evictions_lower", "evictions_upper", "remaining", "lost"

void write_selection_row(CsvWriter& csv, const SelectionConfig& cfg, double v_max,
                         std::uint64_t seed, std::size_t sources, const SelectionMetrics& m) {
  csv.cell(to_string(cfg.protocol.kind)).cell(cfg.boundaries.promotion);
  csv.cell(cfg.boundaries.lower_eviction).cell(cfg.boundaries.upper_eviction);
  csv.cell(v_max).cell(seed).cell(sources).cell(m.enrolled).cell(m.promoted);
  csv.cell(m.persistence).cell(m.persistence_upper).cell(m.promotion_time).cell(m.conversion);
  csv.cell(m.avg_overlap).cell(m.evictions_lower).cell(m.evictions_upper).cell(m.remaining);
  csv.cell(m.lost);
  csv.end_row();
}

SelectionConfig selection_config(const Json& p, SelectionKind kind, Boundaries b) {
  SelectionConfig cfg;
  cfg.zone_radius = get_as<Hops>(p, "zone_radius");
  cfg.boundaries = b;
  cfg.protocol.kind = kind;
  cfg.protocol.track_count = get_as<std::size_t>(p, "track_count");
  cfg.overlap_beta = get_as<double>(p, "overlap_beta");
  cfg.validate();
  return cfg;
}

Boundaries boundaries_from(const Json& j) {
  std::vector<Hops> v;
  try {
    v = j.get<std::vector<Hops>>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError("boundaries must be [PB, LEB, UEB] triples");
  }
  if (v.size() != 3) throw ConfigError("boundaries must be [PB, LEB, UEB] triples");
  Boundaries b{v[0], v[1], v[2]};
  b.validate();
  return b;
}

void run_selection_experiment(Context& ctx) {
  const auto& spec = ctx.spec;
  const auto& p = spec.params;
  const auto kind = parse_selection_kind(get_as<std::string>(p, "protocol"));
  const auto speeds = get_as<std::vector<double>>(p, "v_max");
  const auto source_count = get_as<std::size_t>(p, "sources");
  std::vector<SelectionConfig> configs;
  if (!p.at("boundaries").is_array()) throw ConfigError("boundaries must be a list");
  for (const auto& b : p.at("boundaries")) configs.push_back(selection_config(p, kind, boundaries_from(b)));
  if (configs.empty() || speeds.empty()) throw ConfigError("boundaries and v_max must be nonempty");

  const auto start = place_nodes(spec.topology.placement);
  const Area area = spec.topology.placement.area;
  const double range = spec.topology.range;

  // [v][seed][config]
  std::vector<std::vector<std::vector<SelectionMetrics>>> metrics(
      speeds.size(), std::vector<std::vector<SelectionMetrics>>(spec.seeds.size()));
  std::vector<std::size_t> used(spec.seeds.size());
  for (std::size_t vi = 0; vi < speeds.size(); ++vi) {
    parallel_for(spec.seeds.size(), spec.jobs, [&](std::size_t si) {
      const auto trace = simulate(start, area, mobility_from(p, speeds[vi], spec.seeds[si]));
      const auto snaps = snapshot_graphs(trace, range);
      auto sources = shuffled_nodes(start.size(), spec.seeds[si], 0x50c);
      sources.resize(std::min(source_count, sources.size()));
      used[si] = sources.size();
      for (const auto& cfg : configs) {
        const auto run = run_selection(snaps, sources, cfg, spec.seeds[si]);
        metrics[vi][si].push_back(compute_metrics(run.records, trace, cfg, range));
      }
    });
  }

  CsvWriter csv(ctx.file("selection.csv"), {SWNET_SELECTION_COLUMNS});
  for (std::size_t vi = 0; vi < speeds.size(); ++vi)
    for (std::size_t ci = 0; ci < configs.size(); ++ci)
      for (std::size_t si = 0; si < spec.seeds.size(); ++si)
        write_selection_row(csv, configs[ci], speeds[vi], spec.seeds[si], used[si],
                            metrics[vi][si][ci]);
  csv.close();
}

void run_compare_protocols(Context& ctx) {
  const auto& spec = ctx.spec;
  const auto& p = spec.params;
  const Boundaries b{get_as<Hops>(p, "pb"), get_as<Hops>(p, "leb"), get_as<Hops>(p, "ueb")};
  const auto border_cfg = selection_config(p, SelectionKind::kBorder, b);
  const auto prediction_cfg = selection_config(p, SelectionKind::kNeighborPrediction, b);
  const auto v_max = get_as<double>(p, "v_max");
  const auto target = get_as<std::size_t>(p, "target_contacts");
  const auto start = place_nodes(spec.topology.placement);
  const Area area = spec.topology.placement.area;
  const double range = spec.topology.range;

  std::vector<ProtocolComparison> results(spec.seeds.size());
  parallel_for(spec.seeds.size(), spec.jobs, [&](std::size_t si) {
    const auto trace = simulate(start, area, mobility_from(p, v_max, spec.seeds[si]));
    const auto snaps = snapshot_graphs(trace, range);
    const auto pool = shuffled_nodes(start.size(), spec.seeds[si], 0x50c);
    results[si] = compare_protocols(snaps, trace, range, pool, border_cfg, prediction_cfg, target,
                                    spec.seeds[si]);
  });

  CsvWriter csv(ctx.file("selection.csv"), {SWNET_SELECTION_COLUMNS});
  std::size_t matched = 0;
  for (std::size_t si = 0; si < results.size(); ++si) {
    const auto& r = results[si];
    write_selection_row(csv, border_cfg, v_max, spec.seeds[si], r.border_sources, r.border);
    write_selection_row(csv, prediction_cfg, v_max, spec.seeds[si], r.prediction_sources,
                        r.prediction);
    matched += r.matched ? 1 : 0;
  }
  csv.close();
  ctx.result.summary = {{"matched_seeds", matched}};
}

// ---- registry --------------------------------------------------------------

struct Entry {
  ExperimentInfo info;
  std::function<void(Context&)> body;
};

Json mobility_defaults() {
  return {{"duration", 200.0}, {"tick", 1.0}, {"pause", 0.0}, {"zone_radius", 4}};
}

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = [] {
    std::vector<Entry> e;
    {
      Json d = mobility_defaults();
      d["v_max"] = 20.0;
      d["pb"] = 7;
      d["leb"] = 4;
      d["ueb"] = 10;
      d["track_count"] = 20;
      d["target_contacts"] = 300;
      d["overlap_beta"] = 0.8;
      e.push_back({{"compare-protocols",
                    "border vs neighbour-prediction selection at a matched contact count", d},
                   run_compare_protocols});
    }
    e.push_back({{"contact-sweep", "add k shortcuts within [2, r] hops for r = 2..D",
                  Json{{"k", {25, 80, 150}}, {"r", Json::array()}}},
                 [](Context& c) { run_distance_sweep(c, false); }});
    e.push_back({{"discovery", "query unreachability over zone radius and query depth",
                  Json{{"zone_radii", {1, 2, 3, 4, 5, 6}},
                       {"query_depths", {0, 1, 2, 3, 4, 5}},
                       {"contact_distance", 7},
                       {"contact_max", 7},
                       {"contacts_per_node", nullptr},
                       {"total_contacts", 100},
                       {"share_zone_contacts", false},
                       {"sources", 25},
                       {"targets_per_source", 50}}},
                 run_discovery});
    e.push_back({{"exact-sweep", "add k shortcuts at exactly r hops for r = 2..D",
                  Json{{"k", {25, 80, 150}}, {"r", Json::array()}}},
                 [](Context& c) { run_distance_sweep(c, true); }});
    e.push_back({{"kleinberg", "D/H(D) table and simulated per-hop expectation",
                  Json{{"d_min", 1}, {"d_max", 100}, {"sources_per_seed", 50}}},
                 run_kleinberg});
    e.push_back({{"rewire-sweep", "rewire or add a fraction p of links",
                  Json{{"mode", "rewire"},
                       {"p", {0.0005, 0.001, 0.002, 0.005, 0.01, 0.0258, 0.05, 0.1, 0.198,
                              0.3, 0.5}}}},
                 run_rewire_sweep});
    {
      Json d = mobility_defaults();
      d["protocol"] = "border";
      d["boundaries"] = Json::array({Json::array({7, 4, 10})});
      d["v_max"] = Json::array({20.0});
      d["track_count"] = 20;
      d["sources"] = 25;
      d["overlap_beta"] = 0.8;
      e.push_back({{"selection", "contact selection metrics over boundary settings", d},
                   run_selection_experiment});
    }
    e.push_back({{"topo-stats", "C, L, m, D for one topology per seed", Json::object()},
                 run_topo_stats});
    {
      Json d = mobility_defaults();
      d["v_max"] = Json::array({20.0, 40.0});
      d["sources"] = 25;
      d["track_count"] = 0;
      e.push_back({{"tracking", "hop histogram of tracked border nodes under mobility", d},
                   run_tracking});
    }
    return e;
  }();
  return entries;
}

const Entry* find_entry(std::string_view name) {
  for (const auto& e : registry())
    if (e.info.name == name) return &e;
  return nullptr;
}

TopologySpec parse_topology(const Json& j) {
  TopologySpec t;
  if (j.is_null()) return t;
  if (!j.is_object()) throw ConfigError("topology must be an object");
  auto& p = t.placement;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto& k = it.key();
    const char* key = k.c_str();
    if (k == "placement") {
      p.kind = parse_placement(get_as<std::string>(j, key));
    } else if (k == "n") {
      p.n = get_as<std::size_t>(j, key);
    } else if (k == "width") {
      p.area.width = get_as<double>(j, key);
    } else if (k == "height") {
      p.area.height = get_as<double>(j, key);
    } else if (k == "range") {
      t.range = get_as<double>(j, key);
    } else if (k == "seed") {
      p.seed = get_as<std::uint64_t>(j, key);
    } else if (k == "normal_mean") {
      p.normal_mean = get_as<double>(j, key);
    } else if (k == "normal_std") {
      p.normal_std = get_as<double>(j, key);
    } else if (k == "skew_lambda") {
      p.skew_lambda = get_as<double>(j, key);
    } else if (k == "grid_rows") {
      p.grid_rows = get_as<std::size_t>(j, key);
    } else if (k == "grid_cols") {
      p.grid_cols = get_as<std::size_t>(j, key);
    } else {
      throw ConfigError("unknown topology key '" + k + "'");
    }
  }
  p.validate();
  if (!(t.range > 0.0)) throw ConfigError("range must be > 0");
  return t;
}

Json topology_to_json(const TopologySpec& t) {
  const auto& p = t.placement;
  return {{"placement", to_string(p.kind)}, {"n", p.n},
          {"width", p.area.width},          {"height", p.area.height},
          {"range", t.range},               {"seed", p.seed},
          {"normal_mean", p.normal_mean},   {"normal_std", p.normal_std},
          {"skew_lambda", p.skew_lambda},   {"grid_rows", p.grid_rows},
          {"grid_cols", p.grid_cols}};
}

}  // namespace

const std::vector<ExperimentInfo>& experiments() {
  static const std::vector<ExperimentInfo> infos = [] {
    std::vector<ExperimentInfo> v;
    for (const auto& e : registry()) v.push_back(e.info);
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    return v;
  }();
  return infos;
}

const ExperimentInfo* find_experiment(std::string_view name) {
  for (const auto& e : experiments())
    if (e.name == name) return &e;
  return nullptr;
}

std::string list_experiments() {
  std::ostringstream out;
  for (const auto& e : experiments()) {
    out << e.name << "  " << e.summary << '\n';
    for (auto it = e.defaults.begin(); it != e.defaults.end(); ++it)
      out << "    " << it.key() << " = " << it.value().dump() << '\n';
  }
  return out.str();
}

std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
  std::vector<std::uint64_t> seeds;
  auto number = [&](std::string_view s) {
    std::uint64_t v = 0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || end != s.data() + s.size() || s.empty())
      throw ConfigError("bad seed list '" + std::string(text) + "'");
    return v;
  };
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto item = text.substr(0, comma);
    const auto dash = item.find('-');
    if (dash == std::string_view::npos) {
      seeds.push_back(number(item));
    } else {
      const auto lo = number(item.substr(0, dash));
      const auto hi = number(item.substr(dash + 1));
      if (hi < lo) throw ConfigError("bad seed range '" + std::string(item) + "'");
      for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
    }
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (seeds.empty()) throw ConfigError("seed list must be nonempty");
  return seeds;
}

ExperimentSpec parse_spec(const Json& doc, std::string_view experiment) {
  if (!doc.is_object()) throw ConfigError("config must be an object");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    static const std::vector<std::string> known{"experiment", "topology", "seeds", "output_dir",
                                                "params", "jobs"};
    if (std::find(known.begin(), known.end(), it.key()) == known.end())
      throw ConfigError("unknown config key '" + it.key() + "'");
  }
  ExperimentSpec spec;
  std::string name(experiment);
  if (doc.contains("experiment")) {
    const auto given = get_as<std::string>(doc, "experiment");
    if (!name.empty() && given != name)
      throw ConfigError("config is for '" + given + "' but '" + name + "' was requested");
    name = given;
  }
  const Entry* entry = find_entry(name);
  if (!entry) throw ConfigError("unknown experiment '" + name + "'");
  spec.experiment = name;
  spec.topology = parse_topology(doc.value("topology", Json()));
  if (doc.contains("seeds")) {
    const auto& s = doc.at("seeds");
    if (s.is_string()) {
      spec.seeds = parse_seed_list(s.get<std::string>());
    } else {
      spec.seeds = get_as<std::vector<std::uint64_t>>(doc, "seeds");
    }
    if (spec.seeds.empty()) throw ConfigError("seeds must be nonempty");
  } else {
    spec.seeds = parse_seed_list("1-10");
  }
  if (doc.contains("output_dir")) spec.output_dir = get_as<std::string>(doc, "output_dir");
  if (doc.contains("jobs")) spec.jobs = get_as<std::size_t>(doc, "jobs");
  spec.params = merge_params(entry->info.defaults, doc.value("params", Json()), name);
  return spec;
}

Json spec_to_json(const ExperimentSpec& spec) {
  return {{"experiment", spec.experiment},
          {"topology", topology_to_json(spec.topology)},
          {"seeds", spec.seeds},
          {"output_dir", spec.output_dir.string()},
          {"params", spec.params}};
}

RunResult run(const ExperimentSpec& spec) {
  const Entry* entry = find_entry(spec.experiment);
  if (!entry) throw ConfigError("unknown experiment '" + spec.experiment + "'");
  if (spec.seeds.empty()) throw ConfigError("seeds must be nonempty");
  spec.topology.placement.validate();

  std::error_code ec;
  fs::create_directories(spec.output_dir, ec);
  if (ec || !fs::is_directory(spec.output_dir))
    throw std::runtime_error("cannot create output directory " + spec.output_dir.string());

  RunResult result;
  Context ctx{spec, result};
  const auto t0 = std::chrono::steady_clock::now();
  entry->body(ctx);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  Json outputs = Json::array();
  for (const auto& p : result.outputs) outputs.push_back(p.filename().string());
  Json manifest = {{"tool", "swnet"},
                   {"version", SWNET_VERSION},
                   {"compiler", __VERSION__},
                   {"config", spec_to_json(spec)},
                   {"path_length_scope", "largest component"},
                   {"jobs", spec.jobs},
                   {"outputs", outputs},
                   {"summary", result.summary},
                   {"wall_time_s", wall}};
  result.manifest = spec.output_dir / "manifest.json";
  std::ofstream out(result.manifest, std::ios::binary | std::ios::trunc);
  out << manifest.dump(2) << '\n';
  if (!out) throw std::runtime_error("cannot write " + result.manifest.string());
  return result;
}

}  // namespace swnet::runner
