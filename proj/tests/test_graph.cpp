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

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "permsynth/graph.hpp"

using namespace permsynth;

TEST_CASE("graph specs build the expected shapes") {
  const auto p = parse_graph("path:5");
  CHECK(p.size() == 5);
  CHECK(p.edges().size() == 4);
  CHECK(p.shape() == Shape::Path);
  CHECK(p.diameter() == 4);

  const auto r = parse_graph("ring:6");
  CHECK(r.edges().size() == 6);
  CHECK(r.shape() == Shape::Ring);
  CHECK(r.distance(0, 3) == 3);
  CHECK(r.distance(0, 5) == 1);

  const auto g = parse_graph("grid:3x2");
  CHECK(g.size() == 6);
  CHECK(g.edges().size() == 7);
  CHECK(g.shape() == Shape::Grid);

  CHECK_THROWS_AS(parse_graph("path:0"), InvalidInput);
  CHECK_THROWS_AS(parse_graph("blob:3"), InvalidInput);
  CHECK_THROWS_AS(parse_graph("ring:2"), InvalidInput);
}

TEST_CASE("edge lists reject disconnected graphs") {
  CHECK_NOTHROW(parse_edge_list("# tiny\n0 1\n1 2\n"));
  CHECK_THROWS_AS(parse_edge_list("0 1\n2 3\n"), InvalidInput);
}

TEST_CASE("walk order follows the path") {
  const auto g = parse_edge_list("2 0\n0 3\n3 1\n");
  REQUIRE(g.shape() == Shape::Path);
  CHECK(g.walk_order() == std::vector<Vertex>{1, 3, 0, 2});
}

TEST_CASE("non-cut vertices") {
  CHECK(non_cut_vertices(CouplingGraph::path(5)) == std::vector<Vertex>{0, 4});
  CHECK(non_cut_vertices(CouplingGraph::ring(4)).size() == 4);
  CHECK(non_cut_vertices(CouplingGraph::star(3)) == std::vector<Vertex>{1, 2, 3});
}

TEST_CASE("steiner tree connects every terminal") {
  const auto g = CouplingGraph::grid(4, 4);
  const std::vector<Vertex> terminals{0, 3, 12, 15};
  const auto tree = steiner_tree(g, terminals);
  std::set<Vertex> touched;
  for (const auto& e : tree) {
    CHECK(g.has_edge(e.a, e.b));
    touched.insert(e.a);
    touched.insert(e.b);
  }
  for (Vertex t : terminals) CHECK(touched.count(t));
  CHECK(tree.size() + 1 == touched.size());  // a tree
  const std::vector<Vertex> verts(touched.begin(), touched.end());
  CHECK(is_connected(g, verts));
}

TEST_CASE("induced subgraph relabels and refuses disconnected sets") {
  const auto g = CouplingGraph::ring(6);
  const std::vector<Vertex> keep{4, 5, 0};
  const auto sub = g.induced(keep);
  CHECK(sub.size() == 3);
  CHECK(sub.has_edge(0, 1));
  CHECK(sub.has_edge(1, 2));
  CHECK_FALSE(sub.has_edge(0, 2));
  const std::vector<Vertex> split{0, 3};
  CHECK_THROWS_AS(g.induced(split), InvalidInput);
}

TEST_CASE("partitions are connected and balanced") {
  for (const auto& g : {CouplingGraph::path(8), CouplingGraph::ring(9), CouplingGraph::grid(4, 3),
                        CouplingGraph::random_tree(12, 7)}) {
    const auto parts = partition_graph(g, 100);
    REQUIRE_FALSE(parts.empty());
    for (const auto& p : parts) {
      CHECK(p.left.vertices.size() + p.right.vertices.size() == g.size());
      CHECK(is_connected(g, p.left.vertices));
      CHECK(is_connected(g, p.right.vertices));
      CHECK(p.imbalance() <= g.size() / 2);
      REQUIRE_FALSE(p.removed_edges.empty());
      for (auto [l, r] : p.removed_edges) {
        CHECK(g.has_edge(l, r));
        CHECK(p.in_left(l));
        CHECK_FALSE(p.in_left(r));
      }
    }
  }
  const auto path_parts = partition_graph(CouplingGraph::path(8), 100);
  CHECK(path_parts.front().imbalance() == 0);
  CHECK(path_parts.front().removed_edges.size() == 1);
  CHECK(partition_graph(CouplingGraph::ring(8), 100).front().removed_edges.size() == 2);
}

TEST_CASE("random trees are reproducible trees") {
  const auto a = CouplingGraph::random_tree(20, 5);
  const auto b = CouplingGraph::random_tree(20, 5);
  CHECK(a == b);
  CHECK(a.edges().size() == 19);
}

namespace {
// Random connected graph: a random tree plus extra edges.
CouplingGraph random_connected(unsigned n, std::uint64_t seed) {
  const auto tree = CouplingGraph::random_tree(n, seed);
  std::set<std::pair<Vertex, Vertex>> edges;
  for (const auto& e : tree.edges()) edges.emplace(std::min(e.a, e.b), std::max(e.a, e.b));
  std::mt19937_64 rng(seed);
  for (unsigned k = 0; k < n / 2; ++k) {
    const Vertex a = rng() % n, b = rng() % n;
    if (a != b) edges.emplace(std::min(a, b), std::max(a, b));
  }
  std::ostringstream text;
  for (auto [a, b] : edges) text << a << ' ' << b << '\n';
  return parse_edge_list(text.str());
}
}  // namespace

TEST_CASE("non-cut vertices match removal-and-BFS") {
  for (unsigned n = 2; n <= 10; ++n) {
    for (std::uint64_t s = 0; s < 10; ++s) {
      const auto g = random_connected(n, s * 31 + n);
      std::vector<Vertex> expected;
      for (Vertex v = 0; v < n; ++v) {
        std::vector<Vertex> rest;
        for (Vertex u = 0; u < n; ++u) {
          if (u != v) rest.push_back(u);
        }
        if (is_connected(g, rest)) expected.push_back(v);
      }
      CHECK(non_cut_vertices(g) == expected);
    }
  }
}

TEST_CASE("distances match Floyd-Warshall") {
  for (unsigned n = 2; n <= 12; ++n) {
    const auto g = random_connected(n, 1000 + n);
    constexpr unsigned kInf = 1u << 20;
    std::vector<std::vector<unsigned>> d(n, std::vector<unsigned>(n, kInf));
    for (Vertex v = 0; v < n; ++v) d[v][v] = 0;
    for (const auto& e : g.edges()) d[e.a][e.b] = d[e.b][e.a] = 1;
    for (unsigned k = 0; k < n; ++k) {
      for (unsigned i = 0; i < n; ++i) {
        for (unsigned j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
      }
    }
    for (Vertex i = 0; i < n; ++i) {
      for (Vertex j = 0; j < n; ++j) CHECK(g.distance(i, j) == d[i][j]);
    }
  }
}

TEST_CASE("best partitions are balanced to within one vertex") {
  for (const auto& g : {CouplingGraph::path(7), CouplingGraph::path(10), CouplingGraph::ring(7),
                        CouplingGraph::ring(12), CouplingGraph::grid(4, 4),
                        CouplingGraph::grid(6, 3)}) {
    CHECK(partition_graph(g, 1).front().imbalance() <= 1);
  }
}
