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

#include <random>
#include <sstream>

#include "permsynth/baselines.hpp"
#include "permsynth/exact.hpp"

using namespace permsynth;

TEST_CASE("encodings decode to verified circuits") {
  const auto g = CouplingGraph::path(3);
  const auto target = Gf2Matrix::from_permutation(Permutation({2, 1, 0}));
  for (auto obj : {Objective::Size, Objective::Depth}) {
    const unsigned bound = bfs_oracle(g, target, Primitive::Cnot, obj);
    const auto enc = encode_cnot(g, target, bound, obj);
    const auto r = solve(enc.formula);
    REQUIRE(r.status == SatStatus::Sat);
    const auto c = decode(r.model, enc.vars);
    CHECK(verify(c, g, target));
    CHECK(measure(c, obj) <= bound);
    CHECK(solve(encode_cnot(g, target, bound - 1, obj).formula).status == SatStatus::Unsat);
  }
  const auto enc = encode_swap(g, Permutation({2, 1, 0}), 3, Objective::Depth);
  const auto r = solve(enc.formula);
  REQUIRE(r.status == SatStatus::Sat);
  CHECK(verify(decode(r.model, enc.vars), g, Permutation({2, 1, 0})));
  CHECK(solve(encode_swap(g, Permutation({2, 1, 0}), 2, Objective::Depth).formula).status ==
        SatStatus::Unsat);
}

TEST_CASE("pruning and symmetry breaking keep the optimum") {
  const auto g = CouplingGraph::path(4);
  EncodeOptions plain;
  plain.reachability_pruning = false;
  plain.symmetry_breaking = false;
  ExactOptions loose;
  loose.encode = plain;
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 6; ++rep) {
    const auto p = Permutation::random(4, rng());
    for (auto prim : {Primitive::Cnot, Primitive::Swap}) {
      for (auto obj : {Objective::Size, Objective::Depth}) {
        const auto a = exact_synth(g, p, prim, obj);
        const auto b = exact_synth(g, p, prim, obj, loose);
        CHECK(a.optimum == b.optimum);
        CHECK(measure(a.circuit, obj) == a.optimum);
      }
    }
  }
}

TEST_CASE("exact synthesis matches the BFS oracle on path:3 and the triangle") {
  std::mt19937_64 rng(9);
  for (const auto& g : {CouplingGraph::path(3), CouplingGraph::ring(3)}) {
    for (int rep = 0; rep < 12; ++rep) {
      const auto m = Gf2Matrix::random_invertible(3, rng);
      for (auto obj : {Objective::Size, Objective::Depth}) {
        const auto r = exact_synth(g, m, Primitive::Cnot, obj);
        CHECK(r.optimum == bfs_oracle(g, m, Primitive::Cnot, obj));
        CHECK(verify(r.circuit, g, m));
      }
    }
  }
}

TEST_CASE("known small optima") {
  const auto p2 = CouplingGraph::path(2);
  const Permutation t({1, 0});
  CHECK(exact_synth(p2, t, Primitive::Cnot, Objective::Size).optimum == 3);
  CHECK(exact_synth(p2, t, Primitive::Cnot, Objective::Depth).optimum == 3);
  CHECK(exact_synth(p2, t, Primitive::Swap, Objective::Size).optimum == 1);
  const auto id = exact_synth(CouplingGraph::path(5), Permutation::identity(5), Primitive::Cnot,
                              Objective::Depth);
  CHECK(id.optimum == 0);
  CHECK(id.queries.empty());
  CHECK(exact_synth(CouplingGraph::path(3), Permutation::reversal(3), Primitive::Swap,
                    Objective::Depth)
            .optimum == 3);
}

TEST_CASE("path reversal needs CNOT depth 2n+2") {
  for (unsigned n = 3; n <= 5; ++n) {
    const auto r = exact_synth(CouplingGraph::path(n), Permutation::reversal(n), Primitive::Cnot,
                               Objective::Depth);
    CHECK(r.optimum == 2 * n + 2);
  }
}

TEST_CASE("a swap synthesis of a non-permutation is rejected") {
  CHECK_THROWS_AS(exact_synth(CouplingGraph::path(2), Gf2Matrix::from_rows({{1, 1}, {0, 1}}),
                              Primitive::Swap, Objective::Size),
                  InvalidInput);
}

TEST_CASE("time limit reports a lower bound") {
  ExactOptions o;
  o.time_limit = 0.3;
  const auto r = exact_synth(CouplingGraph::path(8), Permutation::reversal(8), Primitive::Cnot,
                             Objective::Depth, o);
  CHECK(r.timed_out);
  CHECK(r.lower_bound >= 1);
  CHECK(r.lower_bound <= 18);
}

TEST_CASE("sweep is independent of the worker count") {
  const auto g = CouplingGraph::path(4);
  Sampler all;
  const auto a = sweep_all(g, Primitive::Swap, Objective::Size, all, {}, 1);
  const auto b = sweep_all(g, Primitive::Swap, Objective::Size, all, {}, 3);
  REQUIRE(a.rows.size() == 24);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].perm == b.rows[i].perm);
    CHECK(a.rows[i].optimum == b.rows[i].optimum);
    CHECK(*a.rows[i].optimum == a.rows[i].perm.inversions());
  }
  CHECK(a.max_optimum == 6);
  REQUIRE(a.witness);
  CHECK(*a.witness == Permutation::reversal(4));

  std::ostringstream csv;
  write_sweep_csv(csv, a);
  CHECK(csv.str().rfind("perm,optimum,queries,wall_ms\n\"0,1,2,3\",0,", 0) == 0);

  Sampler some;
  some.all = false;
  some.count = 5;
  some.seed = 4;
  CHECK(some.draw(7).size() == 5);
  CHECK(some.draw(7) == some.draw(7));
}

TEST_CASE("first satisfiable bound equals the oracle on random 4x4 targets") {
  const auto g = CouplingGraph::path(4);
  std::mt19937_64 rng(44);
  for (int rep = 0; rep < 100; ++rep) {
    const auto m = Gf2Matrix::random_invertible(4, rng);
    for (auto obj : {Objective::Size, Objective::Depth}) {
      const auto r = exact_synth(g, m, Primitive::Cnot, obj);
      REQUIRE(r.optimum == bfs_oracle(g, m, Primitive::Cnot, obj));
      // Optimality certificate: the last query is SAT, the one before UNSAT.
      if (r.optimum > 0) {
        REQUIRE(r.queries.back().status == SatStatus::Sat);
        REQUIRE(r.queries.back().bound == r.optimum);
        if (r.queries.size() > 1) CHECK(r.queries[r.queries.size() - 2].status == SatStatus::Unsat);
      }
    }
  }
}
