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

#include "permsynth/rowcol.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <random>
#include <set>
#include <sstream>

namespace permsynth {

OrderStrategy parse_order_strategy(std::string_view text) {
  auto bad = [&] { return InvalidInput("bad order strategy '" + std::string(text) + "'"); };
  if (text == "exhaustive") return OrderStrategy::exhaustive();
  if (text.rfind("fixed:", 0) == 0) {
    std::vector<Vertex> order;
    std::stringstream ss{std::string(text.substr(6))};
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        const unsigned long v = std::stoul(item, &used);
        if (used != item.size()) throw bad();
        order.push_back(static_cast<Vertex>(v));
      } catch (const std::logic_error&) {
        throw bad();
      }
    }
    if (order.empty()) throw bad();
    return OrderStrategy::fixed(std::move(order));
  }
  if (text.rfind("sample:", 0) == 0) {
    std::string rest(text.substr(7));
    std::uint64_t seed = 0;
    if (auto colon = rest.find(':'); colon != std::string::npos) {
      try {
        seed = std::stoull(rest.substr(colon + 1));
      } catch (const std::logic_error&) {
        throw bad();
      }
      rest = rest.substr(0, colon);
    }
    unsigned long k = 0;
    try {
      k = std::stoul(rest);
    } catch (const std::logic_error&) {
      throw bad();
    }
    if (k == 0) throw bad();
    return OrderStrategy::sample(static_cast<unsigned>(k), seed);
  }
  throw bad();
}

ResidualCache::Key ResidualCache::key_of(const CouplingGraph& g, const Gf2Matrix& m) {
  std::vector<bool> bits;
  bits.reserve(static_cast<std::size_t>(m.size()) * m.size());
  for (unsigned i = 0; i < m.size(); ++i) {
    for (unsigned k = 0; k < m.size(); ++k) bits.push_back(m.get(i, k));
  }
  return {g.edges(), std::move(bits)};
}

std::optional<Circuit> ResidualCache::find(const CouplingGraph& g, const Gf2Matrix& m) const {
  std::lock_guard lock(mutex_);
  auto it = table_.find(key_of(g, m));
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

void ResidualCache::store(const CouplingGraph& g, const Gf2Matrix& m, const Circuit& c) {
  std::lock_guard lock(mutex_);
  table_.emplace(key_of(g, m), c);
}

std::size_t ResidualCache::size() const {
  std::lock_guard lock(mutex_);
  return table_.size();
}

namespace {

struct RootedTree {
  std::vector<Vertex> order;  // BFS order from the root
  std::vector<Vertex> parent;  // indexed by global vertex
  std::vector<char> member;
};

// Steiner tree over `terminals` inside the subgraph induced on `alive`,
// rooted at `root`; vertices are global labels.
RootedTree rooted_steiner(const CouplingGraph& g, const std::vector<Vertex>& alive,
                          const std::vector<Vertex>& terminals, Vertex root) {
  const CouplingGraph sub = g.induced(alive);
  std::vector<Vertex> local(g.size(), 0);
  for (Vertex i = 0; i < alive.size(); ++i) local[alive[i]] = i;
  std::vector<Vertex> local_terms;
  for (Vertex t : terminals) local_terms.push_back(local[t]);
  const auto edges = steiner_tree(sub, local_terms);

  std::vector<std::vector<Vertex>> adj(g.size());
  for (const Edge& e : edges) {
    adj[alive[e.a]].push_back(alive[e.b]);
    adj[alive[e.b]].push_back(alive[e.a]);
  }
  RootedTree t;
  t.parent.assign(g.size(), root);
  t.member.assign(g.size(), 0);
  t.order.push_back(root);
  t.member[root] = 1;
  for (std::size_t i = 0; i < t.order.size(); ++i) {
    const Vertex x = t.order[i];
    std::sort(adj[x].begin(), adj[x].end());
    for (Vertex y : adj[x]) {
      if (!t.member[y]) {
        t.member[y] = 1;
        t.parent[y] = x;
        t.order.push_back(y);
      }
    }
  }
  return t;
}

}  // namespace

Elimination eliminate_vertex(const Gf2Matrix& m, const CouplingGraph& g,
                             const std::vector<Vertex>& alive, Vertex v) {
  if (m.size() != g.size()) throw InvalidInput("matrix size differs from graph size");
  if (std::find(alive.begin(), alive.end(), v) == alive.end()) {
    throw InvalidInput("vertex " + std::to_string(v) + " is not in the residual graph");
  }
  {
    const CouplingGraph sub = g.induced(alive);
    const auto pos = std::find(alive.begin(), alive.end(), v) - alive.begin();
    const auto nc = non_cut_vertices(sub);
    if (std::find(nc.begin(), nc.end(), static_cast<Vertex>(pos)) == nc.end()) {
      throw InvalidInput("vertex " + std::to_string(v) + " is a cut vertex");
    }
  }
  const Gf2Matrix block = m.restrict(alive);
  if (!block.is_invertible()) throw InvalidInput("matrix is singular");

  Elimination out{{}, m};
  Gf2Matrix& a = out.matrix;
  auto op = [&](Vertex control, Vertex target) {
    a.add_row(control, target);
    out.ops.emplace_back(control, target);
  };

  // Column step: clear column v everywhere except row v.
  std::vector<Vertex> terminals{v};
  for (Vertex i : alive) {
    if (i != v && a.get(i, v)) terminals.push_back(i);
  }
  if (terminals.size() > 1) {
    const RootedTree t = rooted_steiner(g, alive, terminals, v);
    for (auto it = t.order.rbegin(); it + 1 != t.order.rend(); ++it) {
      const Vertex x = *it, p = t.parent[x];
      if (a.get(x, v) && !a.get(p, v)) op(x, p);
    }
    for (auto it = t.order.rbegin(); it + 1 != t.order.rend(); ++it) {
      const Vertex x = *it;
      if (a.get(x, v)) op(t.parent[x], x);
    }
  }

  // Row step: add to row v the unique combination S of other residual rows
  // whose sum equals row v outside column v.
  std::vector<Vertex> rest;
  for (Vertex i : alive) {
    if (i != v) rest.push_back(i);
  }
  if (!rest.empty()) {
    const Gf2Matrix r = a.restrict(rest);
    std::vector<bool> b(rest.size());
    bool any = false;
    for (std::size_t k = 0; k < rest.size(); ++k) any |= (b[k] = a.get(v, rest[k]));
    if (any) {
      const auto x = solve_row_combination(r, b);
      if (!x) throw std::logic_error("residual block became singular");
      std::vector<Vertex> terms{v};
      std::vector<char> in_s(g.size(), 0);
      for (std::size_t k = 0; k < rest.size(); ++k) {
        if ((*x)[k]) {
          terms.push_back(rest[k]);
          in_s[rest[k]] = 1;
        }
      }
      const RootedTree t = rooted_steiner(g, alive, terms, v);
      // Steiner points would otherwise be counted by the accumulation pass;
      // adding each into its parent first cancels them out.
      for (std::size_t i = 1; i < t.order.size(); ++i) {
        const Vertex s = t.order[i];
        if (!in_s[s]) op(s, t.parent[s]);
      }
      for (auto it = t.order.rbegin(); it + 1 != t.order.rend(); ++it) {
        op(*it, t.parent[*it]);
      }
    }
  }

  for (Vertex i : alive) {
    if (a.get(v, i) != (i == v) || a.get(i, v) != (i == v)) {
      throw std::logic_error("elimination left row/column " + std::to_string(v) + " non-unit");
    }
  }
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Candidate {
  Circuit circuit;
  std::vector<Vertex> order;
  bool fallback = false;
};

bool better(const Circuit& a, const std::vector<Vertex>& order_a, const Candidate& b) {
  const auto sa = a.size(), sb = b.circuit.size();
  if (sa != sb) return sa < sb;
  const auto da = a.depth(), db = b.circuit.depth();
  if (da != db) return da < db;
  return order_a < b.order;
}

std::vector<Vertex> non_cut_in(const CouplingGraph& g, const std::vector<Vertex>& alive) {
  if (alive.size() == 1) return alive;
  const auto nc = non_cut_vertices(g.induced(alive));
  std::vector<Vertex> out;
  for (Vertex i : nc) out.push_back(alive[i]);
  std::sort(out.begin(), out.end());
  return out;
}

class Runner {
 public:
  Runner(const CouplingGraph& g, const RowcolOptions& options) : g_(g), options_(options) {}

  // Completes a candidate from a state with `alive` remaining vertices:
  // exact residual solve, or elimination continued by `tail` (smallest
  // non-cut vertex when `tail` runs out) if the solver gives up.
  Candidate finish(const Gf2Matrix& m, std::vector<Vertex> alive,
                   std::vector<std::pair<Vertex, Vertex>> ops, std::vector<Vertex> order,
                   const std::vector<Vertex>& tail) {
    Candidate c;
    c.order = order;
    Circuit residual(g_.size());
    if (alive.size() > 1) {
      const Gf2Matrix sub = m.restrict(alive);
      if (!sub.is_identity()) {
        const CouplingGraph sg = g_.induced(alive);
        std::optional<Circuit> local;
        if (options_.cache) local = options_.cache->find(sg, sub);
        if (!local) {
          SynthesisResult r = exact_synth(sg, sub, Primitive::Cnot, Objective::Size, options_.exact);
          if (!r.timed_out) {
            local = r.circuit;
            if (options_.cache) options_.cache->store(sg, sub, *local);
          }
        }
        if (local) {
          residual = remap(*local, alive, g_.size());
        } else {
          // Keep eliminating down to one vertex.
          c.fallback = true;
          Gf2Matrix cur = m;
          std::size_t next = 0;
          while (alive.size() > 1) {
            const auto nc = non_cut_in(g_, alive);
            Vertex v = nc.front();
            while (next < tail.size()) {
              const Vertex cand = tail[next++];
              if (std::find(nc.begin(), nc.end(), cand) != nc.end()) {
                v = cand;
                break;
              }
            }
            Elimination e = eliminate_vertex(cur, g_, alive, v);
            ops.insert(ops.end(), e.ops.begin(), e.ops.end());
            cur = std::move(e.matrix);
            alive.erase(std::find(alive.begin(), alive.end(), v));
            c.order.push_back(v);
          }
        }
      }
    }
    c.circuit = residual;
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) c.circuit.add_cnot(it->first, it->second);
    return c;
  }

  void consider(Candidate c) {
    if (!best_ || better(c.circuit, c.order, *best_)) best_ = std::move(c);
  }

  // Depth-first search over all non-cut choices, ascending.
  void exhaustive(const Gf2Matrix& m, const std::vector<Vertex>& alive,
                  std::vector<std::pair<Vertex, Vertex>>& ops, std::vector<Vertex>& order) {
    if (alive.size() <= stop_at()) {
      consider(finish(m, alive, ops, order, {}));
      return;
    }
    for (Vertex v : non_cut_in(g_, alive)) {
      Elimination e = eliminate_vertex(m, g_, alive, v);
      std::vector<Vertex> rest = alive;
      rest.erase(std::find(rest.begin(), rest.end(), v));
      const std::size_t mark = ops.size();
      ops.insert(ops.end(), e.ops.begin(), e.ops.end());
      order.push_back(v);
      exhaustive(e.matrix, rest, ops, order);
      order.pop_back();
      ops.resize(mark);
    }
  }

  void along(const Gf2Matrix& target, const std::vector<Vertex>& full_order) {
    Gf2Matrix m = target;
    std::vector<Vertex> alive(g_.size());
    for (Vertex i = 0; i < g_.size(); ++i) alive[i] = i;
    std::vector<std::pair<Vertex, Vertex>> ops;
    std::vector<Vertex> order;
    std::size_t i = 0;
    while (alive.size() > stop_at()) {
      const Vertex v = full_order.at(i++);
      Elimination e = eliminate_vertex(m, g_, alive, v);
      ops.insert(ops.end(), e.ops.begin(), e.ops.end());
      m = std::move(e.matrix);
      alive.erase(std::find(alive.begin(), alive.end(), v));
      order.push_back(v);
    }
    std::vector<Vertex> tail(full_order.begin() + static_cast<long>(i), full_order.end());
    consider(finish(m, alive, ops, order, tail));
  }

  unsigned stop_at() const { return std::max(1u, options_.hybrid_threshold); }
  std::optional<Candidate>& best() { return best_; }

 private:
  const CouplingGraph& g_;
  const RowcolOptions& options_;
  std::optional<Candidate> best_;
};

std::vector<Vertex> random_order(const CouplingGraph& g, std::mt19937_64& rng) {
  std::vector<Vertex> alive(g.size());
  for (Vertex i = 0; i < g.size(); ++i) alive[i] = i;
  std::vector<Vertex> order;
  while (!alive.empty()) {
    const auto nc = non_cut_in(g, alive);
    std::uniform_int_distribution<std::size_t> pick(0, nc.size() - 1);
    const Vertex v = nc[pick(rng)];
    order.push_back(v);
    alive.erase(std::find(alive.begin(), alive.end(), v));
  }
  return order;
}

// Accepts all n vertices or the first n - 1 (the last one is implied);
// returns the full order.
std::vector<Vertex> validate_order(const CouplingGraph& g, const std::vector<Vertex>& order) {
  if (order.size() != g.size() && order.size() + 1 != g.size()) {
    throw InvalidInput("fixed order must list all " + std::to_string(g.size()) +
                       " vertices (or all but the last)");
  }
  std::vector<Vertex> alive(g.size());
  for (Vertex i = 0; i < g.size(); ++i) alive[i] = i;
  for (Vertex v : order) {
    auto it = std::find(alive.begin(), alive.end(), v);
    if (it == alive.end()) throw InvalidInput("fixed order repeats or misnames a vertex");
    const auto nc = non_cut_in(g, alive);
    if (std::find(nc.begin(), nc.end(), v) == nc.end()) {
      throw InvalidInput("vertex " + std::to_string(v) + " is a cut vertex at its turn");
    }
    alive.erase(it);
  }
  std::vector<Vertex> full = order;
  full.insert(full.end(), alive.begin(), alive.end());
  return full;
}

}  // namespace

std::vector<std::vector<Vertex>> elimination_orders(const CouplingGraph& g, unsigned stop_at) {
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> order;
  std::vector<Vertex> alive(g.size());
  for (Vertex i = 0; i < g.size(); ++i) alive[i] = i;
  const unsigned floor = std::max(1u, stop_at);
  auto rec = [&](auto&& self, const std::vector<Vertex>& live) -> void {
    if (live.size() <= floor) {
      out.push_back(order);
      return;
    }
    for (Vertex v : non_cut_in(g, live)) {
      std::vector<Vertex> rest = live;
      rest.erase(std::find(rest.begin(), rest.end(), v));
      order.push_back(v);
      self(self, rest);
      order.pop_back();
    }
  };
  rec(rec, alive);
  return out;
}

SynthesisResult rowcol_synth(const CouplingGraph& g, const Gf2Matrix& target,
                             const RowcolOptions& options) {
  const auto t0 = Clock::now();
  if (target.size() != g.size()) throw InvalidInput("target size differs from graph size");
  if (!target.is_invertible()) throw InvalidInput("target matrix is not invertible");
  if (options.hybrid_threshold == 0) throw InvalidInput("hybrid threshold must be at least 1");

  SynthesisResult result;
  result.method = options.hybrid_threshold > 1 ? "rowcol-hybrid" : "rowcol";
  result.objective = Objective::Size;
  result.circuit = Circuit(g.size());
  std::vector<Vertex> fixed_order;
  if (options.strategy.kind == OrderStrategy::Kind::Fixed) {
    fixed_order = validate_order(g, options.strategy.order);
  }

  if (!target.is_identity()) {
    Runner run(g, options);
    switch (options.strategy.kind) {
      case OrderStrategy::Kind::Fixed:
        run.along(target, fixed_order);
        break;
      case OrderStrategy::Kind::Exhaustive: {
        std::vector<Vertex> alive(g.size());
        for (Vertex i = 0; i < g.size(); ++i) alive[i] = i;
        std::vector<std::pair<Vertex, Vertex>> ops;
        std::vector<Vertex> order;
        run.exhaustive(target, alive, ops, order);
        break;
      }
      case OrderStrategy::Kind::Sample: {
        if (options.strategy.samples == 0) throw InvalidInput("sample count must be positive");
        std::mt19937_64 rng(options.strategy.seed);
        std::set<std::vector<Vertex>> seen;
        for (unsigned k = 0; k < options.strategy.samples; ++k) {
          auto order = random_order(g, rng);
          if (seen.insert(order).second) run.along(target, order);
        }
        break;
      }
    }
    Candidate& best = *run.best();
    result.circuit = std::move(best.circuit);
    result.fallback = best.fallback;
    std::ostringstream note;
    note << "order=";
    for (std::size_t i = 0; i < best.order.size(); ++i) note << (i ? "," : "") << best.order[i];
    if (best.fallback) note << "; residual solve timed out, eliminated to one vertex";
    result.note = note.str();
  }
  result.optimum = static_cast<unsigned>(result.circuit.size());
  result.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return result;
}

}  // namespace permsynth
