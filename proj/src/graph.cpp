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

#include "permsynth/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <sstream>

namespace permsynth {

namespace {

constexpr std::uint16_t kUnreached = std::numeric_limits<std::uint16_t>::max();

unsigned parse_unsigned(std::string_view s, std::string_view what) {
  unsigned value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw InvalidInput("malformed " + std::string(what) + ": '" +
                       std::string(s) + "'");
  }
  return value;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open graph file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// BFS over the subgraph induced by `mask`, returning the number of reached
// vertices starting from `source`.
unsigned reach_count(const CouplingGraph& g, const std::vector<char>& mask,
                     Vertex source) {
  std::vector<char> seen(g.size(), 0);
  std::vector<Vertex> stack{source};
  seen[source] = 1;
  unsigned count = 0;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    ++count;
    for (Vertex w : g.neighbors(v)) {
      if (mask[w] && !seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  return count;
}

}  // namespace

std::string_view shape_name(Shape s) {
  switch (s) {
    case Shape::Path: return "path";
    case Shape::Ring: return "ring";
    case Shape::Tree: return "tree";
    case Shape::Grid: return "grid";
    case Shape::General: break;
  }
  return "general";
}

CouplingGraph::CouplingGraph(unsigned n, std::vector<Edge> edges,
                             std::vector<GridPoint> coords)
    : n_(n), edges_(std::move(edges)), coords_(std::move(coords)) {
  if (n_ == 0) throw InvalidInput("graph must have at least one vertex");
  if (!coords_.empty() && coords_.size() != n_) {
    throw InvalidInput("coordinate table does not match vertex count");
  }
  std::sort(edges_.begin(), edges_.end());
  adjacency_.assign(n_, {});
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.a == e.b) throw InvalidInput("self-loop on vertex " + std::to_string(e.a));
    if (e.b >= n_) throw InvalidInput("edge endpoint out of range");
    if (i > 0 && edges_[i - 1] == e) {
      throw InvalidInput("duplicate edge (" + std::to_string(e.a) + "," +
                         std::to_string(e.b) + ")");
    }
    adjacency_[e.a].push_back(e.b);
    adjacency_[e.b].push_back(e.a);
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());

  dist_.assign(static_cast<std::size_t>(n_) * n_, kUnreached);
  std::vector<Vertex> queue(n_);
  for (Vertex s = 0; s < n_; ++s) {
    std::uint16_t* row = &dist_[static_cast<std::size_t>(s) * n_];
    row[s] = 0;
    std::size_t head = 0, tail = 0;
    queue[tail++] = s;
    while (head < tail) {
      Vertex v = queue[head++];
      for (Vertex w : adjacency_[v]) {
        if (row[w] == kUnreached) {
          row[w] = static_cast<std::uint16_t>(row[v] + 1);
          queue[tail++] = w;
        }
      }
    }
    if (tail != n_) throw InvalidInput("graph is disconnected");
  }
  detect_shape();
}

void CouplingGraph::detect_shape() {
  const std::size_t m = edges_.size();
  unsigned max_deg = 0, min_deg = n_;
  for (const auto& adj : adjacency_) {
    max_deg = std::max<unsigned>(max_deg, adj.size());
    min_deg = std::min<unsigned>(min_deg, adj.size());
  }
  auto walk_from = [&](Vertex start, Vertex first) {
    walk_.clear();
    walk_.push_back(start);
    Vertex prev = start, cur = first;
    while (cur != start && walk_.size() < n_) {
      walk_.push_back(cur);
      const auto& adj = adjacency_[cur];
      Vertex next = adj[0] == prev ? (adj.size() > 1 ? adj[1] : start) : adj[0];
      prev = cur;
      cur = next;
    }
  };

  if (m + 1 == n_ && max_deg <= 2) {
    shape_ = Shape::Path;
    if (n_ == 1) {
      walk_ = {0};
      return;
    }
    Vertex start = n_;
    for (Vertex v = 0; v < n_ && start == n_; ++v) {
      if (adjacency_[v].size() == 1) start = v;
    }
    walk_from(start, adjacency_[start][0]);
    return;
  }
  if (!coords_.empty()) {
    int minx = coords_[0].x, maxx = minx, miny = coords_[0].y, maxy = miny;
    for (const auto& p : coords_) {
      minx = std::min(minx, p.x);
      maxx = std::max(maxx, p.x);
      miny = std::min(miny, p.y);
      maxy = std::max(maxy, p.y);
    }
    const std::size_t w = maxx - minx + 1, h = maxy - miny + 1;
    const std::size_t lattice_edges = (w - 1) * h + (h - 1) * w;
    if (w >= 2 && h >= 2 && w * h == n_ && m == lattice_edges) {
      shape_ = Shape::Grid;
      return;
    }
  }
  if (n_ >= 3 && m == n_ && max_deg == 2 && min_deg == 2) {
    shape_ = Shape::Ring;
    walk_from(0, adjacency_[0][0]);
    return;
  }
  if (m + 1 == n_) {
    shape_ = Shape::Tree;
    return;
  }
  shape_ = Shape::General;
}

CouplingGraph CouplingGraph::path(unsigned n) {
  if (n < 2) throw InvalidInput("path needs n >= 2");
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return CouplingGraph(n, std::move(edges));
}

CouplingGraph CouplingGraph::ring(unsigned n) {
  if (n < 3) throw InvalidInput("ring needs n >= 3");
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  edges.emplace_back(n - 1, 0);
  return CouplingGraph(n, std::move(edges));
}

CouplingGraph CouplingGraph::grid(unsigned width, unsigned height) {
  if (width == 0 || height == 0 || width * height < 2) {
    throw InvalidInput("grid needs at least two vertices");
  }
  std::vector<Edge> edges;
  std::vector<GridPoint> coords;
  for (unsigned y = 0; y < height; ++y) {
    for (unsigned x = 0; x < width; ++x) {
      const Vertex v = y * width + x;
      coords.push_back({static_cast<int>(x), static_cast<int>(y)});
      if (x + 1 < width) edges.emplace_back(v, v + 1);
      if (y + 1 < height) edges.emplace_back(v, v + width);
    }
  }
  return CouplingGraph(width * height, std::move(edges), std::move(coords));
}

CouplingGraph CouplingGraph::star(unsigned leaves) {
  if (leaves < 1) throw InvalidInput("star needs at least one leaf");
  std::vector<Edge> edges;
  for (Vertex v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  return CouplingGraph(leaves + 1, std::move(edges));
}

CouplingGraph CouplingGraph::complete(unsigned n) {
  if (n < 2) throw InvalidInput("complete graph needs n >= 2");
  std::vector<Edge> edges;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b) edges.emplace_back(a, b);
  return CouplingGraph(n, std::move(edges));
}

CouplingGraph CouplingGraph::random_tree(unsigned n, std::uint64_t seed) {
  if (n < 2) throw InvalidInput("tree needs n >= 2");
  if (n == 2) return CouplingGraph(2, {Edge(0, 1)});
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Vertex> pick(0, n - 1);
  std::vector<Vertex> pruefer(n - 2);
  for (auto& x : pruefer) x = pick(rng);
  std::vector<unsigned> degree(n, 1);
  for (Vertex x : pruefer) ++degree[x];
  std::set<Vertex> leaves;
  for (Vertex v = 0; v < n; ++v)
    if (degree[v] == 1) leaves.insert(v);
  std::vector<Edge> edges;
  for (Vertex x : pruefer) {
    Vertex leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    edges.emplace_back(leaf, x);
    if (--degree[x] == 1) leaves.insert(x);
  }
  Vertex u = *leaves.begin();
  Vertex v = *std::next(leaves.begin());
  edges.emplace_back(u, v);
  return CouplingGraph(n, std::move(edges));
}

bool CouplingGraph::has_edge(Vertex u, Vertex v) const {
  if (u >= n_ || v >= n_) return false;
  const auto& adj = adjacency_[u];
  return std::binary_search(adj.begin(), adj.end(), v);
}

unsigned CouplingGraph::distance(Vertex a, Vertex b) const {
  if (a >= n_ || b >= n_) throw std::out_of_range("vertex out of range");
  return dist_[static_cast<std::size_t>(a) * n_ + b];
}

unsigned CouplingGraph::eccentricity(Vertex v) const {
  unsigned e = 0;
  for (Vertex w = 0; w < n_; ++w) e = std::max(e, distance(v, w));
  return e;
}

unsigned CouplingGraph::diameter() const {
  unsigned d = 0;
  for (Vertex v = 0; v < n_; ++v) d = std::max(d, eccentricity(v));
  return d;
}

std::pair<unsigned, unsigned> CouplingGraph::grid_dims() const {
  if (shape_ != Shape::Grid) return {0, 0};
  int minx = coords_[0].x, maxx = minx, miny = coords_[0].y, maxy = miny;
  for (const auto& p : coords_) {
    minx = std::min(minx, p.x);
    maxx = std::max(maxx, p.x);
    miny = std::min(miny, p.y);
    maxy = std::max(maxy, p.y);
  }
  return {static_cast<unsigned>(maxx - minx + 1),
          static_cast<unsigned>(maxy - miny + 1)};
}

CouplingGraph CouplingGraph::induced(std::span<const Vertex> vertices) const {
  std::vector<Vertex> local(n_, n_);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i] >= n_ || local[vertices[i]] != n_) {
      throw InvalidInput("induced: vertex list must be distinct and in range");
    }
    local[vertices[i]] = static_cast<Vertex>(i);
  }
  std::vector<Edge> edges;
  for (const Edge& e : edges_) {
    if (local[e.a] != n_ && local[e.b] != n_) edges.emplace_back(local[e.a], local[e.b]);
  }
  std::vector<GridPoint> coords;
  if (!coords_.empty()) {
    for (Vertex v : vertices) coords.push_back(coords_[v]);
  }
  return CouplingGraph(static_cast<unsigned>(vertices.size()), std::move(edges),
                       std::move(coords));
}

std::string CouplingGraph::to_string() const {
  std::ostringstream os;
  os << shape_name(shape_) << "(n=" << n_ << ";";
  for (const Edge& e : edges_) os << ' ' << e.a << '-' << e.b;
  os << ')';
  return os.str();
}

CouplingGraph parse_edge_list(std::string_view text) {
  std::vector<Edge> edges;
  unsigned max_label = 0;
  bool any = false;
  std::istringstream in{std::string(text)};
  std::string line;
  unsigned lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!(ls >> a)) continue;
    if (!(ls >> b) || (ls >> extra)) {
      throw InvalidInput("edge list line " + std::to_string(lineno) +
                         ": expected 'u v'");
    }
    Vertex u = parse_unsigned(a, "vertex label");
    Vertex v = parse_unsigned(b, "vertex label");
    edges.emplace_back(u, v);
    max_label = std::max({max_label, u, v});
    any = true;
  }
  if (!any) throw InvalidInput("edge list is empty");
  const unsigned n = max_label + 1;
  if (n < 2) throw InvalidInput("graph needs n >= 2");
  return CouplingGraph(n, std::move(edges));
}

CouplingGraph parse_graph(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw InvalidInput("graph spec must look like kind:arg, got '" +
                       std::string(spec) + "'");
  }
  const std::string_view kind = spec.substr(0, colon);
  const std::string_view arg = spec.substr(colon + 1);
  if (kind == "path") {
    unsigned n = parse_unsigned(arg, "path size");
    if (n < 2) throw InvalidInput("path needs n >= 2");
    return CouplingGraph::path(n);
  }
  if (kind == "ring") {
    unsigned n = parse_unsigned(arg, "ring size");
    if (n < 3) throw InvalidInput("ring needs n >= 3");
    return CouplingGraph::ring(n);
  }
  if (kind == "grid") {
    const auto x = arg.find('x');
    if (x == std::string_view::npos) throw InvalidInput("grid spec must be WxH");
    unsigned w = parse_unsigned(arg.substr(0, x), "grid width");
    unsigned h = parse_unsigned(arg.substr(x + 1), "grid height");
    if (w * h < 2) throw InvalidInput("grid needs at least two vertices");
    return CouplingGraph::grid(w, h);
  }
  if (kind == "tree" || kind == "edges") {
    CouplingGraph g = parse_edge_list(read_file(std::string(arg)));
    if (kind == "tree" && g.edges().size() + 1 != g.size()) {
      throw InvalidInput("tree file does not describe a tree");
    }
    return g;
  }
  throw InvalidInput("unknown graph kind '" + std::string(kind) + "'");
}

bool is_connected(const CouplingGraph& g, std::span<const Vertex> subset) {
  if (subset.empty()) return true;
  std::vector<char> mask(g.size(), 0);
  for (Vertex v : subset) mask.at(v) = 1;
  return reach_count(g, mask, subset[0]) == subset.size();
}

std::vector<Vertex> non_cut_vertices(const CouplingGraph& g) {
  const unsigned n = g.size();
  if (n <= 2) {
    std::vector<Vertex> all(n);
    for (Vertex v = 0; v < n; ++v) all[v] = v;
    return all;
  }
  // Iterative Tarjan lowlink from root 0.
  std::vector<unsigned> disc(n, 0), low(n, 0);
  std::vector<Vertex> parent(n, n);
  std::vector<std::size_t> next_child(n, 0);
  std::vector<char> cut(n, 0);
  unsigned timer = 0, root_children = 0;
  std::vector<Vertex> stack{0};
  disc[0] = low[0] = ++timer;
  while (!stack.empty()) {
    Vertex v = stack.back();
    const auto& adj = g.neighbors(v);
    if (next_child[v] < adj.size()) {
      Vertex w = adj[next_child[v]++];
      if (disc[w] == 0) {
        parent[w] = v;
        disc[w] = low[w] = ++timer;
        if (v == 0) ++root_children;
        stack.push_back(w);
      } else if (w != parent[v]) {
        low[v] = std::min(low[v], disc[w]);
      }
    } else {
      stack.pop_back();
      if (parent[v] != n) {
        Vertex p = parent[v];
        low[p] = std::min(low[p], low[v]);
        if (p != 0 && low[v] >= disc[p]) cut[p] = 1;
      }
    }
  }
  if (root_children > 1) cut[0] = 1;
  std::vector<Vertex> result;
  for (Vertex v = 0; v < n; ++v)
    if (!cut[v]) result.push_back(v);
  return result;
}

std::vector<Edge> steiner_tree(const CouplingGraph& g,
                               std::span<const Vertex> terminals) {
  if (terminals.empty()) throw InvalidInput("steiner_tree: empty terminal set");
  const unsigned n = g.size();
  std::vector<char> is_terminal(n, 0), in_tree(n, 0);
  for (Vertex t : terminals) is_terminal.at(t) = 1;
  Vertex first = *std::min_element(terminals.begin(), terminals.end());
  in_tree[first] = 1;
  unsigned remaining = 0;
  for (Vertex v = 0; v < n; ++v)
    if (is_terminal[v] && !in_tree[v]) ++remaining;

  std::vector<Edge> tree;
  std::vector<unsigned> dist(n);
  std::vector<Vertex> pred(n), queue;
  queue.reserve(n);
  while (remaining > 0) {
    std::fill(dist.begin(), dist.end(), std::numeric_limits<unsigned>::max());
    queue.clear();
    for (Vertex v = 0; v < n; ++v) {
      if (in_tree[v]) {
        dist[v] = 0;
        pred[v] = v;
        queue.push_back(v);
      }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
      Vertex v = queue[head];
      for (Vertex w : g.neighbors(v)) {
        if (dist[w] == std::numeric_limits<unsigned>::max()) {
          dist[w] = dist[v] + 1;
          pred[w] = v;
          queue.push_back(w);
        }
      }
    }
    Vertex best = n;
    for (Vertex v = 0; v < n; ++v) {
      if (is_terminal[v] && !in_tree[v] && (best == n || dist[v] < dist[best])) best = v;
    }
    for (Vertex v = best; !in_tree[v]; v = pred[v]) {
      tree.emplace_back(v, pred[v]);
      in_tree[v] = 1;
      if (is_terminal[v]) --remaining;
    }
  }
  std::sort(tree.begin(), tree.end());
  return tree;
}

bool Partition::in_left(Vertex v) const {
  return std::binary_search(left.vertices.begin(), left.vertices.end(), v);
}

unsigned Partition::imbalance() const {
  const auto l = left.vertices.size(), r = right.vertices.size();
  return static_cast<unsigned>(l > r ? l - r : r - l);
}

bool Partition::removed_disjoint() const {
  std::set<Vertex> seen;
  for (auto [l, r] : removed_edges) {
    if (!seen.insert(l).second || !seen.insert(r).second) return false;
  }
  return true;
}

namespace {

struct Candidate {
  std::vector<Vertex> left;
  Vertex start;
};

Partition make_partition(const CouplingGraph& g, std::vector<Vertex> left,
                         Vertex start) {
  std::sort(left.begin(), left.end());
  std::vector<char> is_left(g.size(), 0);
  for (Vertex v : left) is_left[v] = 1;
  std::vector<Vertex> right;
  for (Vertex v = 0; v < g.size(); ++v)
    if (!is_left[v]) right.push_back(v);

  Partition p{Side{left, g.induced(left)}, Side{right, g.induced(right)}, {}, {}, start};
  for (const Edge& e : g.edges()) {
    if (is_left[e.a] != is_left[e.b]) {
      p.crossing_edges.emplace_back(is_left[e.a] ? e.a : e.b,
                                    is_left[e.a] ? e.b : e.a);
    }
  }
  std::sort(p.crossing_edges.begin(), p.crossing_edges.end());
  // Greedy maximal matching in sorted order; equals the full crossing set
  // whenever that set is already vertex-disjoint.
  std::set<Vertex> used;
  for (auto [l, r] : p.crossing_edges) {
    if (used.count(l) || used.count(r)) continue;
    used.insert(l);
    used.insert(r);
    p.removed_edges.emplace_back(l, r);
  }
  return p;
}

std::vector<Candidate> grid_cuts(const CouplingGraph& g) {
  auto [w, h] = g.grid_dims();
  int minx = g.coord(0).x, miny = g.coord(0).y;
  for (Vertex v = 0; v < g.size(); ++v) {
    minx = std::min(minx, g.coord(v).x);
    miny = std::min(miny, g.coord(v).y);
  }
  std::vector<Candidate> cuts;
  if (w >= 2) {
    Candidate c{{}, 0};
    for (Vertex v = 0; v < g.size(); ++v)
      if (g.coord(v).x - minx < static_cast<int>(w / 2)) c.left.push_back(v);
    cuts.push_back(std::move(c));
  }
  if (h >= 2) {
    Candidate c{{}, 1};
    for (Vertex v = 0; v < g.size(); ++v)
      if (g.coord(v).y - miny < static_cast<int>(h / 2)) c.left.push_back(v);
    cuts.push_back(std::move(c));
  }
  return cuts;
}

// Grows the left side by DFS from `start`, admitting a vertex only while the
// untraversed remainder stays connected.
std::vector<Vertex> dfs_grow(const CouplingGraph& g, Vertex start,
                             unsigned target) {
  const unsigned n = g.size();
  std::vector<char> remainder(n, 1), visited(n, 0);
  auto remainder_connected_without = [&](Vertex x) {
    remainder[x] = 0;
    Vertex src = n;
    unsigned total = 0;
    for (Vertex v = 0; v < n; ++v) {
      if (remainder[v]) {
        ++total;
        if (src == n) src = v;
      }
    }
    bool ok = total == 0 || reach_count(g, remainder, src) == total;
    remainder[x] = 1;
    return ok;
  };

  std::vector<Vertex> left;
  if (!remainder_connected_without(start)) return left;
  remainder[start] = 0;
  visited[start] = 1;
  left.push_back(start);
  std::vector<Vertex> stack;
  auto push_neighbors = [&](Vertex v) {
    const auto& adj = g.neighbors(v);
    for (auto it = adj.rbegin(); it != adj.rend(); ++it)
      if (!visited[*it]) stack.push_back(*it);
  };
  push_neighbors(start);
  while (!stack.empty() && left.size() < target) {
    Vertex x = stack.back();
    stack.pop_back();
    if (visited[x]) continue;
    if (!remainder_connected_without(x)) continue;
    visited[x] = 1;
    remainder[x] = 0;
    left.push_back(x);
    push_neighbors(x);
  }
  return left;
}

}  // namespace

std::vector<Partition> partition_graph(const CouplingGraph& g,
                                       unsigned max_samples) {
  const unsigned n = g.size();
  if (n < 2) throw InvalidInput("partition_graph needs n >= 2");
  if (max_samples == 0) throw InvalidInput("partition_graph needs S >= 1");

  std::vector<Candidate> candidates;
  if (g.shape() == Shape::Grid) {
    candidates = grid_cuts(g);
  } else {
    const unsigned target = n / 2;
    std::vector<Candidate> partial;
    for (Vertex s = 0; s < n; ++s) {
      auto left = dfs_grow(g, s, target);
      if (left.empty()) continue;
      if (left.size() == target) {
        candidates.push_back({std::move(left), s});
      } else {
        partial.push_back({std::move(left), s});
      }
    }
    if (candidates.empty()) {
      // No start reached the balanced size; keep the most balanced split.
      auto best = std::max_element(
          partial.begin(), partial.end(), [](const auto& a, const auto& b) {
            return a.left.size() < b.left.size() ||
                   (a.left.size() == b.left.size() && a.start > b.start);
          });
      candidates.push_back(*best);
    }
  }

  // Deduplicate cuts that only differ by which side is called left.
  std::vector<Partition> parts;
  std::set<std::vector<Vertex>> seen;
  for (auto& c : candidates) {
    std::sort(c.left.begin(), c.left.end());
    std::vector<Vertex> comp;
    std::vector<char> mark(n, 0);
    for (Vertex v : c.left) mark[v] = 1;
    for (Vertex v = 0; v < n; ++v)
      if (!mark[v]) comp.push_back(v);
    if (seen.count(c.left) || seen.count(comp)) continue;
    seen.insert(c.left);
    parts.push_back(make_partition(g, c.left, c.start));
  }

  const bool any_disjoint =
      std::any_of(parts.begin(), parts.end(), [](const Partition& p) {
        return p.removed_edges.size() == p.crossing_edges.size();
      });
  if (any_disjoint) {
    std::erase_if(parts, [](const Partition& p) {
      return p.removed_edges.size() != p.crossing_edges.size();
    });
  }
  std::stable_sort(parts.begin(), parts.end(),
                   [](const Partition& a, const Partition& b) {
                     if (a.imbalance() != b.imbalance()) return a.imbalance() < b.imbalance();
                     if (a.removed_edges.size() != b.removed_edges.size())
                       return a.removed_edges.size() > b.removed_edges.size();
                     return a.start < b.start;
                   });
  if (parts.size() > max_samples) parts.erase(parts.begin() + max_samples, parts.end());
  return parts;
}

}  // namespace permsynth
