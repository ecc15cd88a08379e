#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "med/geometry.hpp"

namespace med {

// Simple undirected graph: no self-loops, no duplicate edges (unordered),
// node ids dense in [0, node_count).
struct Graph {
  int node_count = 0;
  std::vector<std::pair<int, int>> edges;

  // Throws ValidationError listing every offending node/edge.
  void validate() const;
};

// A straight-line drawing of a Graph. Every node has a position, no two
// nodes coincide, no edge has zero length.
struct LayoutGraph {
  Graph graph;
  std::vector<Point> positions;    // indexed by node id
  std::vector<double> edge_lengths;  // cached, indexed by edge id

  // Validates all invariants and caches edge lengths.
  static LayoutGraph create(Graph g, std::vector<Point> positions);

  int edge_count() const { return static_cast<int>(graph.edges.size()); }
  Segment segment(int edge) const {
    const auto& [u, v] = graph.edges[edge];
    return {positions[u], positions[v]};
  }
};

// Scale-free graph by preferential attachment: a complete seed clique on
// m+1 nodes, then each new node attaches to m distinct existing nodes
// picked proportionally to current degree. Connected by construction and
// byte-for-byte reproducible for a fixed seed.
Graph generate_ba(int n, int m, std::uint64_t seed);

// Fruchterman-Reingold force-directed placement into a width x height
// frame. Repulsion k^2/d between all pairs, attraction d^2/k along edges,
// k = 0.9*sqrt(width*height/n), linearly cooling displacement cap,
// positions clamped to the frame. A post-pass separates coincident nodes.
LayoutGraph fr_layout(const Graph& g, double width, double height,
                      int iterations, std::uint64_t seed);

// JSON I/O. Layout format:
//   {"nodes":[{"id":0,"x":12.5,"y":80.0},...],"edges":[[0,1],...]}
// Graph format:
//   {"node_count":50,"edges":[[0,1],...]}
// Loading validates every invariant and reports all violations.
LayoutGraph load_layout(const std::string& text);
std::string save_layout(const LayoutGraph& layout);
Graph load_graph(const std::string& text);
std::string save_graph(const Graph& g);

}  // namespace med
