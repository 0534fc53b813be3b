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

#include "permsynth/baselines.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_set>

namespace permsynth {

Circuit odd_even_sort(const CouplingGraph& g, const Permutation& p) {
  if (g.shape() != Shape::Path) throw InvalidInput("odd-even sort needs a path graph");
  if (p.size() != g.size()) throw InvalidInput("permutation size differs from graph size");
  const unsigned n = g.size();
  const auto& walk = g.walk_order();
  std::vector<unsigned> index(n);
  for (unsigned i = 0; i < n; ++i) index[walk[i]] = i;
  // rank[i] = walk index of the destination of the token at walk index i
  std::vector<unsigned> rank(n);
  for (unsigned i = 0; i < n; ++i) rank[i] = index[p.dest(walk[i])];

  Circuit c(n);
  for (unsigned round = 0; round < n; ++round) {
    if (std::is_sorted(rank.begin(), rank.end())) break;
    for (unsigned i = round % 2; i + 1 < n; i += 2) {
      if (rank[i] > rank[i + 1]) {
        std::swap(rank[i], rank[i + 1]);
        c.add_swap(walk[i], walk[i + 1]);
      }
    }
  }
  return c;
}

Circuit peel_tokens(const CouplingGraph& g, const Permutation& p) {
  if (p.size() != g.size()) throw InvalidInput("permutation size differs from graph size");
  const unsigned n = g.size();
  std::vector<Vertex> at(n);  // token on each vertex
  std::vector<Vertex> pos(n);
  std::iota(at.begin(), at.end(), 0u);
  std::iota(pos.begin(), pos.end(), 0u);
  std::vector<Vertex> alive(n);
  std::iota(alive.begin(), alive.end(), 0u);
  const Permutation inv = p.inverse();

  Circuit c(n);
  while (alive.size() > 1) {
    const CouplingGraph sub = g.induced(alive);
    const Vertex local = non_cut_vertices(sub).front();
    const Vertex target = alive[local];
    const Vertex token = inv.dest(target);
    // BFS inside the remaining graph from the target back to the token.
    std::vector<int> parent(n, -1);
    std::vector<char> in(n, 0);
    for (Vertex v : alive) in[v] = 1;
    std::deque<Vertex> queue{target};
    parent[target] = static_cast<int>(target);
    while (!queue.empty()) {
      const Vertex x = queue.front();
      queue.pop_front();
      if (x == pos[token]) break;
      for (Vertex y : g.neighbors(x)) {
        if (in[y] && parent[y] < 0) {
          parent[y] = static_cast<int>(x);
          queue.push_back(y);
        }
      }
    }
    for (Vertex x = pos[token]; x != target;) {
      const Vertex y = static_cast<Vertex>(parent[x]);
      c.add_swap(x, y);
      std::swap(at[x], at[y]);
      pos[at[x]] = x;
      pos[at[y]] = y;
      x = y;
    }
    alive.erase(alive.begin() + local);
  }
  return c;
}

namespace {

struct Move {
  Vertex a, b;  // CNOT control/target, or SWAP pair
};

std::vector<Move> moves_of(const CouplingGraph& g, Primitive primitive) {
  std::vector<Move> out;
  for (const Edge& e : g.edges()) {
    out.push_back({e.a, e.b});
    if (primitive == Primitive::Cnot) out.push_back({e.b, e.a});
  }
  return out;
}

// All non-empty sets of pairwise qubit-disjoint moves.
void disjoint_sets(const std::vector<Move>& moves, std::size_t from, unsigned busy,
                   std::vector<Move>& current, std::vector<std::vector<Move>>& out) {
  for (std::size_t i = from; i < moves.size(); ++i) {
    const unsigned mask = (1u << moves[i].a) | (1u << moves[i].b);
    if (busy & mask) continue;
    current.push_back(moves[i]);
    out.push_back(current);
    disjoint_sets(moves, i + 1, busy | mask, current, out);
    current.pop_back();
  }
}

void apply(Gf2Matrix& m, const Move& mv, Primitive primitive) {
  if (primitive == Primitive::Cnot) {
    m.add_row(mv.a, mv.b);
  } else {
    m.swap_rows(mv.a, mv.b);
  }
}

}  // namespace

unsigned bfs_oracle(const CouplingGraph& g, const Gf2Matrix& target, Primitive primitive,
                    Objective objective) {
  const unsigned n = g.size();
  if (target.size() != n) throw InvalidInput("target size differs from graph size");
  const unsigned limit = primitive == Primitive::Cnot ? kOracleMaxCnotQubits : kOracleMaxSwapQubits;
  if (n > limit) {
    throw InvalidInput("state space too large for the exhaustive oracle (n = " +
                       std::to_string(n) + " > " + std::to_string(limit) + ")");
  }
  if (!target.is_invertible()) throw InvalidInput("target matrix is not invertible");
  if (primitive == Primitive::Swap && !target.is_permutation_matrix()) {
    throw InvalidInput("SWAP circuits only realise permutations");
  }

  const auto moves = moves_of(g, primitive);
  std::vector<std::vector<Move>> steps;
  if (objective == Objective::Size) {
    for (const Move& m : moves) steps.push_back({m});
  } else {
    std::vector<Move> scratch;
    disjoint_sets(moves, 0, 0, scratch, steps);
  }

  const std::uint64_t goal = target.key();
  std::unordered_set<std::uint64_t> seen{Gf2Matrix::identity(n).key()};
  std::vector<Gf2Matrix> frontier{Gf2Matrix::identity(n)};
  for (unsigned dist = 0; !frontier.empty(); ++dist) {
    for (const auto& m : frontier) {
      if (m.key() == goal) return dist;
    }
    std::vector<Gf2Matrix> next;
    for (const auto& m : frontier) {
      for (const auto& step : steps) {
        Gf2Matrix x = m;
        for (const Move& mv : step) apply(x, mv, primitive);
        if (seen.insert(x.key()).second) next.push_back(std::move(x));
      }
    }
    frontier = std::move(next);
  }
  throw std::logic_error("target unreachable from the identity");
}

unsigned bfs_oracle(const CouplingGraph& g, const Permutation& target, Primitive primitive,
                    Objective objective) {
  return bfs_oracle(g, Gf2Matrix::from_permutation(target), primitive, objective);
}

}  // namespace permsynth
