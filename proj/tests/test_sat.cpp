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

#include "permsynth/sat.hpp"

using namespace permsynth;

namespace {

bool brute_force_sat(const CnfFormula& f) {
  const int n = f.num_vars();
  std::vector<bool> model(n + 1);
  for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
    for (int v = 1; v <= n; ++v) model[v] = (bits >> (v - 1)) & 1;
    if (f.satisfied_by(model)) return true;
  }
  return false;
}

CnfFormula random_3sat(int vars, int clauses, std::mt19937_64& rng) {
  CnfFormula f;
  f.new_vars(vars);
  std::uniform_int_distribution<int> var(1, vars);
  for (int c = 0; c < clauses; ++c) {
    std::vector<Lit> cl;
    for (int k = 0; k < 3; ++k) cl.push_back(rng() & 1 ? var(rng) : -var(rng));
    f.add_clause(cl);
  }
  return f;
}

// n+1 pigeons in n holes.
CnfFormula pigeonhole(int holes) {
  CnfFormula f;
  const int pigeons = holes + 1;
  auto x = [&](int p, int h) { return p * holes + h + 1; };
  f.new_vars(pigeons * holes);
  for (int p = 0; p < pigeons; ++p) {
    std::vector<Lit> cl;
    for (int h = 0; h < holes; ++h) cl.push_back(x(p, h));
    f.add_clause(cl);
  }
  for (int h = 0; h < holes; ++h) {
    std::vector<Lit> col;
    for (int p = 0; p < pigeons; ++p) col.push_back(x(p, h));
    f.at_most_one(col);
  }
  return f;
}

}  // namespace

TEST_CASE("cdcl agrees with exhaustive search on random 3-SAT") {
  std::mt19937_64 rng(2024);
  int sat = 0, unsat = 0;
  for (int rep = 0; rep < 300; ++rep) {
    const auto f = random_3sat(12, 45 + rep % 20, rng);
    CdclSolver solver(f, rep);
    const auto r = solver.solve();
    const bool expected = brute_force_sat(f);
    REQUIRE((r.status == SatStatus::Sat) == expected);
    if (expected) {
      CHECK(f.satisfied_by(r.model));
      ++sat;
    } else {
      ++unsat;
    }
  }
  CHECK(sat > 20);
  CHECK(unsat > 20);
}

TEST_CASE("pigeonhole is unsatisfiable") {
  for (int h = 2; h <= 7; ++h) {
    CdclSolver solver(pigeonhole(h));
    CHECK(solver.solve().status == SatStatus::Unsat);
  }
}

TEST_CASE("time limit yields Timeout") {
  CdclSolver solver(pigeonhole(11));
  CHECK(solver.solve(0.05).status == SatStatus::Timeout);
}

TEST_CASE("cardinality helpers") {
  CnfFormula f;
  const int a = f.new_var(), b = f.new_var(), c = f.new_var();
  const std::vector<Lit> all{a, b, c};
  f.exactly_one(all);
  int models = 0;
  std::vector<bool> m(4);
  for (unsigned bits = 0; bits < 8; ++bits) {
    for (int v = 1; v <= 3; ++v) m[v] = (bits >> (v - 1)) & 1;
    models += f.satisfied_by(m);
  }
  CHECK(models == 3);

  CnfFormula x;
  const int o = x.new_var(), p = x.new_var(), q = x.new_var();
  x.xor_equals(o, p, q);
  for (unsigned bits = 0; bits < 8; ++bits) {
    std::vector<bool> mm{false, bool(bits & 1), bool(bits & 2), bool(bits & 4)};
    CHECK(x.satisfied_by(mm) == (mm[1] == (mm[2] != mm[3])));
  }
}

TEST_CASE("dimacs round-trip") {
  std::mt19937_64 rng(5);
  const auto f = random_3sat(10, 30, rng);
  std::istringstream in(f.to_dimacs());
  const auto g = CnfFormula::parse_dimacs(in);
  CHECK(g.num_vars() == f.num_vars());
  REQUIRE(g.num_clauses() == f.num_clauses());
  CHECK(g.to_dimacs() == f.to_dimacs());

  std::istringstream bad("p cnf 2 1\n1 3 0\n");
  CHECK_THROWS(CnfFormula::parse_dimacs(bad));
}

TEST_CASE("competition output parsing") {
  const auto r = parse_competition_output("c hello\ns SATISFIABLE\nv 1 -2\nv 3 0\n", 3);
  CHECK(r.status == SatStatus::Sat);
  CHECK(r.model == std::vector<bool>{false, true, false, true});
  CHECK(parse_competition_output("s UNSATISFIABLE\n", 3).status == SatStatus::Unsat);
  CHECK_THROWS_AS(parse_competition_output("garbage\n", 3), SolverError);
  CHECK_THROWS_AS(parse_competition_output("s SATISFIABLE\nv 9 0\n", 3), SolverError);
}

TEST_CASE("external backend matches the embedded one") {
  std::mt19937_64 rng(77);
  SolveOptions ext;
  ext.backend = SatBackend::External;
  ext.external_solver = DIMACS_SOLVER_PATH;
  for (int rep = 0; rep < 20; ++rep) {
    const auto f = random_3sat(12, 50, rng);
    const auto a = solve(f);
    const auto b = solve(f, ext);
    CHECK(a.status == b.status);
    if (b.status == SatStatus::Sat) CHECK(f.satisfied_by(b.model));
  }
  SolveOptions missing = ext;
  missing.external_solver = "/nonexistent/solver";
  CHECK_THROWS_AS(solve(pigeonhole(2), missing), SolverError);
}
