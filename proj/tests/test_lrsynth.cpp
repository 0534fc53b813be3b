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

#include <numeric>
#include <set>

#include "permsynth/baselines.hpp"
#include "permsynth/lrsynth.hpp"

using namespace permsynth;

namespace {
std::vector<Vertex> identity_placement(unsigned n) {
  std::vector<Vertex> at(n);
  std::iota(at.begin(), at.end(), 0u);
  return at;
}
}  // namespace

TEST_CASE("lane assignment") {
  SECTION("nothing crosses") {
    const auto g = CouplingGraph::path(6);
    const auto part = partition_graph(g, 1).front();
    const auto a = assign_paths(g, part, identity_placement(6), Permutation::identity(6));
    for (int l : a.lane) CHECK(l == -1);
  }
  SECTION("a path has a single lane") {
    const auto g = CouplingGraph::path(8);
    const auto part = partition_graph(g, 1).front();
    const auto p = Permutation::reversal(8);
    const auto a = assign_paths(g, part, identity_placement(8), p);
    unsigned crossing = 0;
    for (Vertex t = 0; t < 8; ++t) {
      if (part.in_left(t) != part.in_left(p.dest(t))) {
        ++crossing;
        CHECK(a.lane[t] == 0);
      }
    }
    REQUIRE(a.load.size() == 1);
    CHECK(a.load[0] == crossing);
  }
  SECTION("ring crossings use both lanes") {
    const auto g = CouplingGraph::ring(8);
    const auto part = partition_graph(g, 1).front();
    REQUIRE(part.removed_edges.size() == 2);
    // Two tokens each way: the ones next to the two cuts.
    std::vector<Vertex> dest(8);
    std::iota(dest.begin(), dest.end(), 0u);
    const auto [l0, r0] = part.removed_edges[0];
    const auto [l1, r1] = part.removed_edges[1];
    std::swap(dest[l0], dest[r0]);
    std::swap(dest[l1], dest[r1]);
    const auto a = assign_paths(g, part, identity_placement(8), Permutation(dest));
    CHECK(a.load[0] == 2);
    CHECK(a.load[1] == 2);
  }
}

TEST_CASE("routing rounds") {
  SECTION("settled tokens need no rounds") {
    const auto g = CouplingGraph::path(6);
    const auto part = partition_graph(g, 1).front();
    CHECK(routing_rounds(g, part, Permutation::identity(6), 24).rounds.empty());
  }
  SECTION("two vertices") {
    const auto g = CouplingGraph::path(2);
    const auto part = partition_graph(g, 1).front();
    const auto out = routing_rounds(g, part, Permutation({1, 0}), 8);
    REQUIRE(out.rounds.size() == 1);
    CHECK(out.rounds[0].size() == 1);
  }
  SECTION("rounds are matchings and every token ends on its side") {
    for (const auto& g : {CouplingGraph::path(10), CouplingGraph::ring(12),
                          CouplingGraph::grid(4, 3), CouplingGraph::random_tree(11, 3)}) {
      const auto parts = partition_graph(g, 4);
      for (std::uint64_t s = 0; s < 10; ++s) {
        const auto p = Permutation::random(g.size(), s);
        for (const auto& part : parts) {
          const auto out = routing_rounds(g, part, p, 4 * g.size());
          if (out.capped) continue;
          for (const auto& round : out.rounds) {
            std::set<Vertex> used;
            for (auto [a, b] : round) {
              CHECK(g.has_edge(a, b));
              CHECK(used.insert(a).second);
              CHECK(used.insert(b).second);
            }
          }
          for (Vertex v = 0; v < g.size(); ++v) {
            CHECK(part.in_left(v) == part.in_left(p.dest(out.at[v])));
          }
        }
      }
    }
  }
}

TEST_CASE("lr-synth verifies across topologies") {
  for (const auto& g : {CouplingGraph::path(9), CouplingGraph::ring(10), CouplingGraph::grid(4, 4),
                        CouplingGraph::random_tree(13, 8), CouplingGraph::star(6)}) {
    for (std::uint64_t s = 0; s < 10; ++s) {
      const auto p = Permutation::random(g.size(), s);
      const auto r = lr_synth(g, p);
      CHECK(verify(r.circuit, g, p));
      CHECK(r.circuit.only({GateKind::Swap}));
    }
  }
  const auto id = lr_synth(CouplingGraph::ring(6), Permutation::identity(6));
  CHECK(id.circuit.empty());
}

TEST_CASE("lr-synth on path reversals tracks odd-even sort") {
  for (unsigned n : {8u, 16u, 32u}) {
    const auto g = CouplingGraph::path(n);
    const auto r = lr_synth(g, Permutation::reversal(n));
    CHECK(r.circuit.size() == n * (n - 1) / 2);
    CHECK(r.circuit.depth() <= n + n / 4);
  }
}

TEST_CASE("halves run in parallel") {
  // Independent reversals on each half of a path: merged depth is the max.
  const auto g = CouplingGraph::path(8);
  const Permutation p({3, 2, 1, 0, 7, 6, 5, 4});
  const auto r = lr_synth(g, p);
  CHECK(verify(r.circuit, g, p));
  CHECK(r.circuit.depth() <= 5);
}

TEST_CASE("hybrid mode uses the exact solver on small sides") {
  const auto g = CouplingGraph::path(8);
  LrOptions h;
  h.hybrid_threshold = 4;
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto p = Permutation::random(8, s);
    const auto r = lr_synth(g, p, h);
    CHECK(verify(r.circuit, g, p));
    CHECK(r.method == "lr-synth-hybrid");
  }
}
