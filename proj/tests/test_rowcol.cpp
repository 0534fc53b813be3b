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
#include <random>

#include "permsynth/baselines.hpp"
#include "permsynth/rowcol.hpp"

using namespace permsynth;

TEST_CASE("eliminating a vertex clears its row and column") {
  std::mt19937_64 rng(1);
  for (const auto& g : {CouplingGraph::path(6), CouplingGraph::ring(6), CouplingGraph::grid(3, 3),
                        CouplingGraph::random_tree(9, 4)}) {
    std::vector<Vertex> alive(g.size());
    std::iota(alive.begin(), alive.end(), 0u);
    for (int rep = 0; rep < 20; ++rep) {
      const auto m = Gf2Matrix::random_invertible(g.size(), rng);
      const Vertex v = non_cut_vertices(g).front();
      const auto e = eliminate_vertex(m, g, alive, v);
      for (unsigned k = 0; k < g.size(); ++k) {
        CHECK(e.matrix.get(v, k) == (k == v));
        CHECK(e.matrix.get(k, v) == (k == v));
      }
      auto replay = m;
      for (auto [c, t] : e.ops) {
        CHECK(g.has_edge(c, t));
        replay.add_row(c, t);
      }
      CHECK(replay == e.matrix);
    }
  }
}

TEST_CASE("rowcol synthesises arbitrary linear functions") {
  std::mt19937_64 rng(2);
  RowcolOptions plain;
  plain.hybrid_threshold = 1;
  plain.strategy = OrderStrategy::sample(3, 5);
  for (const auto& g : {CouplingGraph::path(7), CouplingGraph::ring(8), CouplingGraph::grid(4, 3),
                        CouplingGraph::random_tree(10, 1), CouplingGraph::star(5)}) {
    for (int rep = 0; rep < 10; ++rep) {
      const auto m = Gf2Matrix::random_invertible(g.size(), rng);
      const auto r = rowcol_synth(g, m, plain);
      CHECK(verify(r.circuit, g, m));
      CHECK(r.circuit.only({GateKind::Cnot}));
    }
  }
}

TEST_CASE("exhaustive order is never worse than any fixed order") {
  const auto g = CouplingGraph::path(6);
  RowcolOptions ex;
  ex.hybrid_threshold = 1;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto m = Gf2Matrix::from_permutation(Permutation::random(6, s));
    const auto best = rowcol_synth(g, m, ex);
    for (const auto& order : elimination_orders(g, 1)) {
      RowcolOptions fx = ex;
      fx.strategy = OrderStrategy::fixed(order);
      CHECK(best.circuit.size() <= rowcol_synth(g, m, fx).circuit.size());
    }
  }
}

TEST_CASE("elimination order enumeration") {
  CHECK(elimination_orders(CouplingGraph::path(5), 1).size() == 16);
  CHECK(elimination_orders(CouplingGraph::ring(4), 1).size() == 16);
  for (const auto& o : elimination_orders(CouplingGraph::grid(2, 2), 2)) CHECK(o.size() == 2);
}

TEST_CASE("fixed orders are validated") {
  const auto g = CouplingGraph::path(4);
  RowcolOptions o;
  o.hybrid_threshold = 1;
  o.strategy = OrderStrategy::fixed({1, 0, 2, 3});  // 1 is a cut vertex
  CHECK_THROWS_AS(rowcol_synth(g, Gf2Matrix::identity(4), o), InvalidInput);
  o.strategy = OrderStrategy::fixed({0, 1});
  CHECK_THROWS_AS(rowcol_synth(g, Gf2Matrix::identity(4), o), InvalidInput);
  o.strategy = OrderStrategy::fixed({0, 1, 2, 3});
  CHECK_NOTHROW(rowcol_synth(g, Gf2Matrix::identity(4), o));
}

TEST_CASE("order strategy parsing") {
  CHECK(parse_order_strategy("exhaustive").kind == OrderStrategy::Kind::Exhaustive);
  const auto f = parse_order_strategy("fixed:3,2,1,0");
  CHECK(f.kind == OrderStrategy::Kind::Fixed);
  CHECK(f.order == std::vector<Vertex>{3, 2, 1, 0});
  const auto s = parse_order_strategy("sample:7:9");
  CHECK(s.samples == 7);
  CHECK(s.seed == 9);
  CHECK_THROWS_AS(parse_order_strategy("sometimes"), InvalidInput);
}

TEST_CASE("hybrid with the whole graph as residual is exact") {
  const auto g = CouplingGraph::path(4);
  RowcolOptions h;
  h.hybrid_threshold = 4;
  Permutation p = Permutation::identity(4);
  do {
    const auto r = rowcol_synth(g, Gf2Matrix::from_permutation(p), h);
    CHECK(r.circuit.size() == bfs_oracle(g, p, Primitive::Cnot, Objective::Size));
  } while (next_permutation(p));
}

TEST_CASE("hybrid results verify and the cache is reused") {
  const auto g = CouplingGraph::path(8);
  RowcolOptions h;
  h.hybrid_threshold = 4;
  h.cache = std::make_shared<ResidualCache>();
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto p = Permutation::random(8, s);
    const auto r = rowcol_synth(g, Gf2Matrix::from_permutation(p), h);
    CHECK(verify(r.circuit, g, p));
    CHECK(r.method == "rowcol-hybrid");
  }
  CHECK(h.cache->size() > 0);
}
