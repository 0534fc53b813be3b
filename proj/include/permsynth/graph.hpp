// Copyright 2026 The permsynth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace permsynth {

using Vertex = unsigned;

/** Thrown for malformed user input (graph specs, permutations, flags). */
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/** Undirected edge, stored with a < b. */
struct Edge {
  Vertex a;
  Vertex b;

  Edge() : a(0), b(0) {}
  Edge(Vertex u, Vertex v) : a(u < v ? u : v), b(u < v ? v : u) {}

  bool touches(Vertex v) const { return a == v || b == v; }
  Vertex other(Vertex v) const { return a == v ? b : a; }

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

enum class Shape { General, Path, Ring, Tree, Grid };

std::string_view shape_name(Shape s);

/** Lattice coordinate of a vertex; only present on grid-derived graphs. */
struct GridPoint {
  int x;
  int y;
  friend auto operator<=>(const GridPoint&, const GridPoint&) = default;
};

/**
 * Undirected connected coupling graph on vertices 0..n-1.
 *
 * Immutable after construction. All-pairs distances are computed eagerly
 * so the object can be shared between threads without synchronisation.
 */
class CouplingGraph {
 public:
  CouplingGraph(unsigned n, std::vector<Edge> edges,
                std::vector<GridPoint> coords = {});

  static CouplingGraph path(unsigned n);
  static CouplingGraph ring(unsigned n);
  static CouplingGraph grid(unsigned width, unsigned height);
  static CouplingGraph star(unsigned leaves);
  static CouplingGraph complete(unsigned n);
  /// Uniform random labelled tree (Pruefer sequence).
  static CouplingGraph random_tree(unsigned n, std::uint64_t seed);

  unsigned size() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Vertex>& neighbors(Vertex v) const {
    return adjacency_.at(v);
  }
  unsigned degree(Vertex v) const {
    return static_cast<unsigned>(adjacency_.at(v).size());
  }
  bool has_edge(Vertex u, Vertex v) const;

  /// Shortest-path length; throws std::out_of_range on bad vertices.
  unsigned distance(Vertex a, Vertex b) const;
  unsigned diameter() const;
  unsigned eccentricity(Vertex v) const;

  Shape shape() const { return shape_; }
  bool has_coords() const { return !coords_.empty(); }
  const GridPoint& coord(Vertex v) const { return coords_.at(v); }
  /// Width/height of the lattice when shape() == Grid.
  std::pair<unsigned, unsigned> grid_dims() const;

  /// Vertices in walk order for paths (from the smaller-labelled endpoint)
  /// and rings (from 0 towards its smaller neighbour). Empty otherwise.
  const std::vector<Vertex>& walk_order() const { return walk_; }

  /**
   * Induced subgraph on `vertices`, relabelled so that vertices[i] -> i.
   * Lattice coordinates are carried over. Throws if the induced graph is
   * disconnected.
   */
  CouplingGraph induced(std::span<const Vertex> vertices) const;

  bool operator==(const CouplingGraph& o) const {
    return n_ == o.n_ && edges_ == o.edges_;
  }

  std::string to_string() const;

 private:
  void detect_shape();

  unsigned n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<GridPoint> coords_;
  std::vector<std::uint16_t> dist_;
  Shape shape_ = Shape::General;
  std::vector<Vertex> walk_;
};

/**
 * Build a graph from a textual spec: `path:n`, `ring:n`, `grid:WxH`,
 * `tree:<file>` or `edges:<file>`.
 */
CouplingGraph parse_graph(std::string_view spec);

/// Parse the `u v` per line edge-list format (`#` starts a comment).
CouplingGraph parse_edge_list(std::string_view text);

/// BFS connectivity of the subgraph induced by `subset`.
bool is_connected(const CouplingGraph& g, std::span<const Vertex> subset);

/// Vertices whose removal leaves the graph connected.
std::vector<Vertex> non_cut_vertices(const CouplingGraph& g);

/**
 * Shortest-path Steiner heuristic (2-approximation). Starts from the
 * smallest terminal and repeatedly attaches the nearest remaining terminal
 * by a shortest path; ties go to the smallest label.
 */
std::vector<Edge> steiner_tree(const CouplingGraph& g,
                               std::span<const Vertex> terminals);

/// One side of a 2-partition: global vertex labels and the induced graph
/// (local labels, vertices[i] -> i).
struct Side {
  std::vector<Vertex> vertices;
  CouplingGraph graph;
};

struct Partition {
  Side left;
  Side right;
  /// Selected crossing edges as (left endpoint, right endpoint).
  std::vector<std::pair<Vertex, Vertex>> removed_edges;
  /// All edges between the two sides, same orientation.
  std::vector<std::pair<Vertex, Vertex>> crossing_edges;
  Vertex start = 0;

  bool in_left(Vertex v) const;
  unsigned imbalance() const;
  bool removed_disjoint() const;
};

/**
 * Balanced connected 2-partitions. Grids are cut midway along x or y;
 * other graphs use a DFS from each start vertex that moves visited vertices
 * into the left side while the remainder stays connected. Returns at most
 * `max_samples` partitions, best first.
 */
std::vector<Partition> partition_graph(const CouplingGraph& g,
                                       unsigned max_samples);

}  // namespace permsynth
