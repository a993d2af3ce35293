#include "swnet/graph_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "swnet/error.hpp"

namespace swnet {

namespace {

std::string shortest(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

template <typename T>
T parse_number(const std::string& text, const char* what) {
  T value{};
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size())
    throw ConfigError(std::string("graph file: bad ") + what + " '" + text + "'");
  return value;
}

std::string header_value(const std::string& token, const std::string& key) {
  const std::string prefix = key + "=";
  if (token.rfind(prefix, 0) != 0)
    throw ConfigError("graph file: expected " + prefix + "..., got '" + token + "'");
  return token.substr(prefix.size());
}

}  // namespace

void write_graph(std::ostream& out, const SpatialGraph& g, std::uint64_t seed) {
  out << "swnet-graph n=" << g.size() << " width=" << shortest(g.area().width)
      << " height=" << shortest(g.area().height) << " range=" << shortest(g.range())
      << " seed=" << seed << '\n';
  for (NodeId u = 0; u < g.size(); ++u)
    out << "node " << u << ' ' << shortest(g.position(u).x) << ' '
        << shortest(g.position(u).y) << '\n';
  for (const Edge& e : g.edges())
    out << "edge " << e.u << ' ' << e.v << ' '
        << (e.kind == EdgeKind::kPhysical ? "phys" : "shortcut") << '\n';
}

GraphFile read_graph(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("graph file: missing header");
  std::istringstream head(line);
  std::string magic, tn, tw, th, tr, ts;
  head >> magic >> tn >> tw >> th >> tr >> ts;
  if (magic != "swnet-graph") throw ConfigError("graph file: bad magic '" + magic + "'");
  const auto n = parse_number<std::size_t>(header_value(tn, "n"), "node count");
  const Area area{parse_number<double>(header_value(tw, "width"), "width"),
                  parse_number<double>(header_value(th, "height"), "height")};
  const auto range = parse_number<double>(header_value(tr, "range"), "range");
  const auto seed = parse_number<std::uint64_t>(header_value(ts, "seed"), "seed");

  std::vector<Point> pts(n);
  std::vector<bool> seen(n, false);
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string tag, a, b, c;
    row >> tag >> a >> b >> c;
    if (tag == "node") {
      const auto id = parse_number<NodeId>(a, "node id");
      if (id >= n) throw ConfigError("graph file: node id " + a + " >= n");
      pts[id] = {parse_number<double>(b, "x"), parse_number<double>(c, "y")};
      seen[id] = true;
    } else if (tag == "edge") {
      EdgeKind kind;
      if (c == "phys") {
        kind = EdgeKind::kPhysical;
      } else if (c == "shortcut") {
        kind = EdgeKind::kShortcut;
      } else {
        throw ConfigError("graph file: bad edge kind '" + c + "'");
      }
      edges.push_back({parse_number<NodeId>(a, "edge endpoint"),
                       parse_number<NodeId>(b, "edge endpoint"), kind});
    } else {
      throw ConfigError("graph file: unknown record '" + tag + "'");
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!seen[i]) throw ConfigError("graph file: missing node " + std::to_string(i));
  return {SpatialGraph::from_edges(std::move(pts), area, range, edges), seed};
}

}  // namespace swnet
