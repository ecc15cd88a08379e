#include "med/graphgen.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "json.hpp"
#include "med/rng.hpp"

namespace med {

void Graph::validate() const {
  std::ostringstream problems;
  if (node_count < 1) {
    problems << "node_count " << node_count << " < 1; ";
  }
  std::set<std::pair<int, int>> seen;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto [u, v] = edges[i];
    if (u < 0 || u >= node_count || v < 0 || v >= node_count) {
      problems << "edge " << i << " (" << u << "," << v
               << ") has node id outside [0," << node_count << "); ";
      continue;
    }
    if (u == v) {
      problems << "edge " << i << " (" << u << "," << v << ") is a self-loop; ";
      continue;
    }
    const auto key = std::minmax(u, v);
    if (!seen.insert(key).second) {
      problems << "duplicate edge (" << key.first << "," << key.second
               << ") at index " << i << "; ";
    }
  }
  const std::string msg = problems.str();
  if (!msg.empty()) {
    throw ValidationError("invalid graph: " + msg);
  }
}

LayoutGraph LayoutGraph::create(Graph g, std::vector<Point> positions) {
  g.validate();
  std::ostringstream problems;
  if (static_cast<int>(positions.size()) != g.node_count) {
    throw ValidationError("invalid layout: " +
                          std::to_string(positions.size()) +
                          " positions for " + std::to_string(g.node_count) +
                          " nodes");
  }
  for (int i = 0; i < g.node_count; ++i) {
    if (!std::isfinite(positions[i].x) || !std::isfinite(positions[i].y)) {
      problems << "node " << i << " has non-finite coordinates; ";
    }
  }
  for (int i = 0; i < g.node_count; ++i) {
    for (int j = i + 1; j < g.node_count; ++j) {
      if (distance(positions[i], positions[j]) <= kGeomEps) {
        problems << "nodes " << i << " and " << j << " coincide; ";
      }
    }
  }
  std::vector<double> lengths;
  lengths.reserve(g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto [u, v] = g.edges[e];
    const double len = distance(positions[u], positions[v]);
    if (len <= kGeomEps) {
      problems << "edge " << e << " (" << u << "," << v
               << ") has zero length; ";
    }
    lengths.push_back(len);
  }
  const std::string msg = problems.str();
  if (!msg.empty()) {
    throw ValidationError("invalid layout: " + msg);
  }
  return LayoutGraph{std::move(g), std::move(positions), std::move(lengths)};
}

Graph generate_ba(int n, int m, std::uint64_t seed) {
  if (m < 1 || n < m + 1) {
    throw ValidationError("generate_ba: need n >= m+1 >= 2, got n=" +
                          std::to_string(n) + " m=" + std::to_string(m));
  }
  Graph g;
  g.node_count = n;
  Rng rng(seed);

  // Seed clique on nodes 0..m.
  for (int i = 0; i <= m; ++i) {
    for (int j = i + 1; j <= m; ++j) {
      g.edges.emplace_back(i, j);
    }
  }
  // Endpoint multiset: picking an entry uniformly selects a node with
  // probability proportional to its degree.
  std::vector<int> endpoints;
  for (const auto& [u, v] : g.edges) {
    endpoints.push_back(u);
    endpoints.push_back(v);
  }

  std::vector<int> targets;
  for (int t = m + 1; t < n; ++t) {
    targets.clear();
    while (static_cast<int>(targets.size()) < m) {
      const int cand = endpoints[rng.below(endpoints.size())];
      if (std::find(targets.begin(), targets.end(), cand) == targets.end()) {
        targets.push_back(cand);
      }
    }
    std::sort(targets.begin(), targets.end());
    for (int tgt : targets) {
      g.edges.emplace_back(tgt, t);
      endpoints.push_back(tgt);
      endpoints.push_back(t);
    }
  }
  return g;
}

LayoutGraph fr_layout(const Graph& g, double width, double height,
                      int iterations, std::uint64_t seed) {
  g.validate();
  if (width <= 0.0 || height <= 0.0 || iterations < 1) {
    throw ValidationError("fr_layout: need positive frame and iterations >= 1");
  }
  const int n = g.node_count;
  std::vector<Point> pos(n);
  if (n == 1) {
    pos[0] = {width / 2.0, height / 2.0};
    return LayoutGraph::create(g, std::move(pos));
  }

  Rng rng(seed);
  for (int i = 0; i < n; ++i) {
    pos[i] = {rng.range(0.0, width), rng.range(0.0, height)};
  }

  const double k = 0.9 * std::sqrt(width * height / n);
  const double t0 = std::max(width, height) / 10.0;
  std::vector<Point> disp(n);

  for (int it = 0; it < iterations; ++it) {
    const double temp = t0 * (1.0 - static_cast<double>(it) / iterations);
    std::fill(disp.begin(), disp.end(), Point{0.0, 0.0});

    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        Point delta = pos[j] - pos[i];
        double d = norm(delta);
        if (d < 1e-12) {
          delta = {1e-6, 0.0};
          d = 1e-6;
        }
        const double f = k * k / d;  // repulsive
        const Point push = (f / d) * delta;
        disp[j] = disp[j] + push;
        disp[i] = disp[i] - push;
      }
    }
    for (const auto& [u, v] : g.edges) {
      Point delta = pos[v] - pos[u];
      double d = norm(delta);
      if (d < 1e-12) {
        delta = {1e-6, 0.0};
        d = 1e-6;
      }
      const double f = d * d / k;  // attractive
      const Point pull = (f / d) * delta;
      disp[v] = disp[v] - pull;
      disp[u] = disp[u] + pull;
    }
    for (int i = 0; i < n; ++i) {
      const double d = norm(disp[i]);
      if (d > 1e-12) {
        const double step = std::min(d, temp);
        pos[i] = pos[i] + (step / d) * disp[i];
      }
      pos[i].x = std::clamp(pos[i].x, 0.0, width);
      pos[i].y = std::clamp(pos[i].y, 0.0, height);
    }
  }

  // Separate coincident nodes (clamping can stack them on the border).
  Rng jitter(seed ^ 0x9e3779b97f4a7c15ULL);
  for (int round = 0; round < 100; ++round) {
    bool clean = true;
    for (int i = 0; i < n && clean; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (distance(pos[i], pos[j]) <= 1e-6) {
          const double ang = jitter.range(0.0, 2.0 * 3.14159265358979323846);
          const double rad = 1e-3 * (round + 1);
          pos[j].x = std::clamp(pos[j].x + rad * std::cos(ang), 0.0, width);
          pos[j].y = std::clamp(pos[j].y + rad * std::sin(ang), 0.0, height);
          clean = false;
          break;
        }
      }
    }
    if (clean) break;
  }

  return LayoutGraph::create(g, std::move(pos));
}

namespace {

using nlohmann::ordered_json;

ordered_json parse_json(const std::string& text, const char* what) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

std::vector<std::pair<int, int>> read_edges(const ordered_json& j,
                                            const char* what) {
  if (!j.contains("edges") || !j["edges"].is_array()) {
    throw ParseError(std::string(what) + ": missing \"edges\" array");
  }
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
        !e[1].is_number_integer()) {
      throw ParseError(std::string(what) +
                       ": every edge must be a pair of integer node ids");
    }
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return edges;
}

}  // namespace

LayoutGraph load_layout(const std::string& text) {
  const ordered_json j = parse_json(text, "layout");
  if (!j.contains("nodes") || !j["nodes"].is_array()) {
    throw ParseError("layout: missing \"nodes\" array");
  }
  const auto& nodes = j["nodes"];
  const int n = static_cast<int>(nodes.size());
  std::vector<Point> pos(std::max(n, 0));
  std::vector<bool> seen(std::max(n, 0), false);
  for (const auto& node : nodes) {
    if (!node.is_object() || !node.contains("id") || !node.contains("x") ||
        !node.contains("y") || !node["id"].is_number_integer() ||
        !node["x"].is_number() || !node["y"].is_number()) {
      throw ParseError(
          "layout: every node needs integer \"id\" and numeric \"x\",\"y\"");
    }
    const int id = node["id"].get<int>();
    if (id < 0 || id >= n) {
      throw ParseError("layout: node id " + std::to_string(id) +
                       " not dense in [0," + std::to_string(n) + ")");
    }
    if (seen[id]) {
      throw ParseError("layout: duplicate node id " + std::to_string(id));
    }
    seen[id] = true;
    pos[id] = {node["x"].get<double>(), node["y"].get<double>()};
  }
  Graph g;
  g.node_count = n;
  g.edges = read_edges(j, "layout");
  return LayoutGraph::create(std::move(g), std::move(pos));
}

std::string save_layout(const LayoutGraph& layout) {
  ordered_json j;
  j["nodes"] = ordered_json::array();
  for (int i = 0; i < layout.graph.node_count; ++i) {
    j["nodes"].push_back({{"id", i},
                          {"x", layout.positions[i].x},
                          {"y", layout.positions[i].y}});
  }
  j["edges"] = ordered_json::array();
  for (const auto& [u, v] : layout.graph.edges) {
    j["edges"].push_back({u, v});
  }
  return j.dump(2) + "\n";
}

Graph load_graph(const std::string& text) {
  const ordered_json j = parse_json(text, "graph");
  if (!j.contains("node_count") || !j["node_count"].is_number_integer()) {
    throw ParseError("graph: missing integer \"node_count\"");
  }
  Graph g;
  g.node_count = j["node_count"].get<int>();
  g.edges = read_edges(j, "graph");
  g.validate();
  return g;
}

std::string save_graph(const Graph& g) {
  ordered_json j;
  j["node_count"] = g.node_count;
  j["edges"] = ordered_json::array();
  for (const auto& [u, v] : g.edges) {
    j["edges"].push_back({u, v});
  }
  return j.dump(2) + "\n";
}

}  // namespace med
