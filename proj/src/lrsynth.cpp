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

#include "permsynth/lrsynth.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <limits>
#include <map>
#include <tuple>

#include "permsynth/baselines.hpp"

namespace permsynth {

namespace {

constexpr unsigned kFar = std::numeric_limits<unsigned>::max() / 4;

using Adjacency = std::vector<std::vector<Vertex>>;

std::vector<unsigned> bfs(const Adjacency& adj, Vertex src) {
  std::vector<unsigned> d(adj.size(), kFar);
  std::deque<Vertex> q{src};
  d[src] = 0;
  while (!q.empty()) {
    const Vertex x = q.front();
    q.pop_front();
    for (Vertex y : adj[x]) {
      if (d[y] == kFar) {
        d[y] = d[x] + 1;
        q.push_back(y);
      }
    }
  }
  return d;
}

// Distances used by the routing rules, one table per lane.
struct Geometry {
  std::vector<char> left;
  std::vector<std::pair<Vertex, Vertex>> lanes;
  std::vector<std::vector<unsigned>> to_r_gl;     // inside left side + removed edges
  std::vector<std::vector<unsigned>> to_l_gr;     // inside right side + removed edges
  std::vector<std::vector<unsigned>> to_l_left;   // inside the left side only
  std::vector<std::vector<unsigned>> to_r_right;  // inside the right side only
  std::vector<Vertex> local;                      // index within its side
};

Geometry make_geometry(const CouplingGraph& g, const Partition& part) {
  const unsigned n = g.size();
  Geometry geo;
  geo.left.assign(n, 0);
  for (Vertex v : part.left.vertices) geo.left[v] = 1;
  geo.lanes = part.removed_edges;
  geo.local.assign(n, 0);
  for (Vertex i = 0; i < part.left.vertices.size(); ++i) geo.local[part.left.vertices[i]] = i;
  for (Vertex i = 0; i < part.right.vertices.size(); ++i) geo.local[part.right.vertices[i]] = i;

  Adjacency gl(n), gr(n), lo(n), ro(n);
  for (const Edge& e : g.edges()) {
    if (geo.left[e.a] && geo.left[e.b]) {
      for (Adjacency* a : {&gl, &lo}) {
        (*a)[e.a].push_back(e.b);
        (*a)[e.b].push_back(e.a);
      }
    } else if (!geo.left[e.a] && !geo.left[e.b]) {
      for (Adjacency* a : {&gr, &ro}) {
        (*a)[e.a].push_back(e.b);
        (*a)[e.b].push_back(e.a);
      }
    }
  }
  for (auto [l, r] : geo.lanes) {
    for (Adjacency* a : {&gl, &gr}) {
      (*a)[l].push_back(r);
      (*a)[r].push_back(l);
    }
  }
  for (auto [l, r] : geo.lanes) {
    geo.to_r_gl.push_back(bfs(gl, r));
    geo.to_l_gr.push_back(bfs(gr, l));
    geo.to_l_left.push_back(bfs(lo, l));
    geo.to_r_right.push_back(bfs(ro, r));
  }
  return geo;
}

// Terminal vertices of g (leaves, or the periphery when there are none)
// with next-hop tables towards each of them.
struct Terminals {
  std::vector<Vertex> list;
  std::vector<std::vector<Vertex>> next;   // next[t][v]
  std::vector<std::vector<Vertex>> order;  // BFS order from t
};

Terminals make_terminals(const CouplingGraph& g) {
  Terminals t;
  for (Vertex v = 0; v < g.size(); ++v) {
    if (g.degree(v) == 1) t.list.push_back(v);
  }
  if (t.list.empty()) {
    const unsigned diam = g.diameter();
    for (Vertex v = 0; v < g.size(); ++v) {
      if (g.eccentricity(v) == diam) t.list.push_back(v);
    }
  }
  for (Vertex term : t.list) {
    std::vector<Vertex> next(g.size(), term);
    std::vector<char> seen(g.size(), 0);
    std::vector<Vertex> order{term};
    seen[term] = 1;
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (Vertex y : g.neighbors(order[i])) {
        if (!seen[y]) {
          seen[y] = 1;
          next[y] = order[i];
          order.push_back(y);
        }
      }
    }
    t.next.push_back(std::move(next));
    t.order.push_back(std::move(order));
  }
  return t;
}

std::vector<Vertex> positions(const std::vector<Vertex>& at) {
  std::vector<Vertex> pos(at.size());
  for (Vertex v = 0; v < at.size(); ++v) pos[at[v]] = v;
  return pos;
}

PathAssignment assign_with(const Geometry& geo, const std::vector<Vertex>& at,
                           const Permutation& target) {
  const unsigned n = static_cast<unsigned>(at.size());
  const auto pos = positions(at);
  PathAssignment a;
  a.lane.assign(n, -1);
  a.load.assign(geo.lanes.size(), 0);

  std::vector<Vertex> to_right, to_left;
  for (Vertex t = 0; t < n; ++t) {
    const bool on_left = geo.left[pos[t]], wants_left = geo.left[target.dest(t)];
    if (on_left && !wants_left) to_right.push_back(t);
    if (!on_left && wants_left) to_left.push_back(t);
  }
  if (to_right.size() != to_left.size()) throw std::logic_error("unbalanced crossing sets");
  if (to_right.empty()) return a;
  if (geo.lanes.empty()) throw std::logic_error("partition has no crossing lane");

  auto cut_distance = [&](Vertex t) {
    unsigned best = kFar;
    for (std::size_t L = 0; L < geo.lanes.size(); ++L) {
      best = std::min(best, geo.to_l_left[L][pos[t]]);
    }
    return best;
  };
  std::stable_sort(to_right.begin(), to_right.end(), [&](Vertex x, Vertex y) {
    return std::make_pair(cut_distance(x), x) < std::make_pair(cut_distance(y), y);
  });

  std::vector<char> taken(n, 0);
  for (Vertex v : to_right) {
    std::size_t best_lane = 0;
    unsigned best_cost = kFar;  // twice the cost, so the half-load stays exact
    Vertex best_w = 0;
    for (std::size_t L = 0; L < geo.lanes.size(); ++L) {
      Vertex w = 0;
      unsigned dw = kFar;
      for (Vertex cand : to_left) {
        if (taken[cand]) continue;
        const unsigned d = geo.to_r_right[L][pos[cand]];
        if (d < dw || (d == dw && cand < w)) {
          dw = d;
          w = cand;
        }
      }
      const unsigned dv = geo.to_l_left[L][pos[v]];
      if (dv >= kFar || dw >= kFar) {
        throw std::logic_error("token cannot reach crossing lane");
      }
      const unsigned cost = 2 * std::max(dv, dw) + a.load[L];
      if (cost < best_cost) {
        best_cost = cost;
        best_lane = L;
        best_w = w;
      }
    }
    a.lane[v] = static_cast<int>(best_lane);
    a.lane[best_w] = static_cast<int>(best_lane);
    taken[best_w] = 1;
    a.load[best_lane] += 2;
  }
  return a;
}

}  // namespace

PathAssignment assign_paths(const CouplingGraph& g, const Partition& part,
                            const std::vector<Vertex>& at, const Permutation& target) {
  if (at.size() != g.size() || target.size() != g.size()) {
    throw InvalidInput("placement size differs from graph size");
  }
  return assign_with(make_geometry(g, part), at, target);
}

RoutingOutcome routing_rounds(const CouplingGraph& g, const Partition& part,
                              const Permutation& target, unsigned cap, bool add_to_matching) {
  const unsigned n = g.size();
  if (target.size() != n) throw InvalidInput("permutation size differs from graph size");
  const Geometry geo = make_geometry(g, part);
  const Terminals terms = make_terminals(g);

  RoutingOutcome out;
  out.at.resize(n);
  for (Vertex v = 0; v < n; ++v) out.at[v] = v;
  std::vector<Vertex>& at = out.at;
  std::vector<Vertex> pos = positions(at);
  const PathAssignment asg = assign_with(geo, at, target);
  const auto& lane = asg.lane;
  auto dest = [&](Vertex t) { return target.dest(t); };

  auto to_right = [&](Vertex t) { return geo.left[pos[t]] && !geo.left[dest(t)]; };
  auto to_left = [&](Vertex t) { return !geo.left[pos[t]] && geo.left[dest(t)]; };
  auto crossing_left = [&] {
    unsigned c = 0;
    for (Vertex t = 0; t < n; ++t) c += to_right(t) || to_left(t);
    return c;
  };

  const bool linear = g.shape() == Shape::Path || g.shape() == Shape::Ring;
  std::vector<unsigned> walk_index(n, 0);
  for (unsigned i = 0; i < g.walk_order().size(); ++i) walk_index[g.walk_order()[i]] = i;
  auto side_distance = [&](Vertex a, Vertex b) {
    const CouplingGraph& s = geo.left[a] ? part.left.graph : part.right.graph;
    return s.distance(geo.local[a], geo.local[b]);
  };

  bool lock_left = false, lock_right = false;
  std::vector<std::vector<char>> good(terms.list.size(), std::vector<char>(n, 0));
  std::vector<char> correct(n, 0);

  while (crossing_left() > 0) {
    if (out.iterations >= cap) {
      out.capped = true;
      break;
    }
    ++out.iterations;

    // Weight in tenths: 13 terminal-fixing, 12 lane-crossing, 10 otherwise.
    std::map<std::pair<Vertex, Vertex>, int> cand;
    auto add = [&](Vertex x, Vertex y, int w) {
      auto& slot = cand[{std::min(x, y), std::max(x, y)}];
      slot = std::max(slot, w);
    };

    for (Vertex v = 0; v < n; ++v) correct[v] = dest(at[v]) == v;
    for (std::size_t t = 0; t < terms.list.size(); ++t) {
      for (Vertex v : terms.order[t]) {
        const Vertex nx = terms.next[t][v];
        good[t][v] = correct[v] && (nx == v || good[t][nx]);
      }
    }

    for (const Edge& e : g.edges()) {
      for (auto [x, y] : {std::pair{e.a, e.b}, std::pair{e.b, e.a}}) {
        // Terminal-fixing: the token on x lands on its destination y and the
        // route from y to some terminal is then entirely settled.
        const Vertex a = at[x], b = at[y];
        if (dest(a) == y) {
          bool pushes_back = geo.left[x] != geo.left[y] && geo.left[y] == geo.left[dest(b)];
          // Nor may it drag a crossing token away from its lane.
          if (to_right(b)) {
            const auto Lb = static_cast<std::size_t>(lane[b]);
            pushes_back |= geo.to_r_gl[Lb][x] > geo.to_r_gl[Lb][y];
          } else if (to_left(b)) {
            const auto Lb = static_cast<std::size_t>(lane[b]);
            pushes_back |= geo.to_l_gr[Lb][x] > geo.to_l_gr[Lb][y];
          }
          if (!pushes_back) {
            for (std::size_t t = 0; t < terms.list.size(); ++t) {
              if (y == terms.list[t]) {
                add(x, y, 13);
                break;
              }
              const Vertex z = terms.next[t][y];
              const bool ok = z == x ? (dest(b) == x && (x == terms.list[t] ||
                                                         good[t][terms.next[t][x]]))
                                     : static_cast<bool>(good[t][z]);
              if (ok) {
                add(x, y, 13);
                break;
              }
            }
          }
        }

        const Vertex u = at[x], v = at[y];
        if (to_right(u)) {
          const auto L = static_cast<std::size_t>(lane[u]);
          const auto [l, r] = geo.lanes[L];
          const auto& d = geo.to_r_gl;
          if (d[L][x] > d[L][y]) {
            const bool v_right = to_right(v);
            if (v_right && lane[v] == lane[u] &&
                geo.to_r_right[L][dest(u)] <= geo.to_r_right[L][dest(v)]) {
              continue;
            }
            if (lock_left && v_right && lane[v] != lane[u]) {
              for (Vertex nb : g.neighbors(y)) {
                if (!to_right(at[nb]) && d[L][x] > d[L][nb]) {
                  add(x, y, 10);
                  lock_left = false;
                  break;
                }
              }
            }
            if (v_right && lane[v] != lane[u]) {
              const auto Lv = static_cast<std::size_t>(lane[v]);
              if (d[Lv][y] > d[Lv][x]) add(x, y, 10);
            } else if (x != l) {
              add(x, y, 10);
            } else if (y == r && to_left(v) && lane[v] == lane[u]) {
              add(x, y, 12);
            }
          }
        } else if (to_left(u)) {
          const auto L = static_cast<std::size_t>(lane[u]);
          const auto [l, r] = geo.lanes[L];
          const auto& d = geo.to_l_gr;
          if (d[L][x] > d[L][y]) {
            const bool v_left = to_left(v);
            if (v_left && lane[v] == lane[u] &&
                geo.to_l_left[L][dest(u)] <= geo.to_l_left[L][dest(v)]) {
              continue;
            }
            if (lock_right && v_left && lane[v] != lane[u]) {
              for (Vertex nb : g.neighbors(y)) {
                if (!to_left(at[nb]) && d[L][x] > d[L][nb]) {
                  add(x, y, 10);
                  lock_right = false;
                  break;
                }
              }
            }
            if (v_left && lane[v] != lane[u]) {
              const auto Lv = static_cast<std::size_t>(lane[v]);
              if (d[Lv][y] > d[Lv][x]) add(x, y, 10);
            } else if (x != r) {
              add(x, y, 10);
            } else if (y == l && to_right(v) && lane[v] == lane[u]) {
              add(x, y, 12);
            }
          }
        }
      }
    }

    // Greedy maximum-weight matching.
    std::vector<std::tuple<int, Vertex, Vertex>> ranked;
    for (const auto& [edge, w] : cand) ranked.emplace_back(-w, edge.first, edge.second);
    std::sort(ranked.begin(), ranked.end());
    std::vector<char> used(n, 0);
    std::vector<std::pair<Vertex, Vertex>> matching;
    for (const auto& [w, a, b] : ranked) {
      if (used[a] || used[b]) continue;
      used[a] = used[b] = 1;
      matching.emplace_back(a, b);
    }
    if (matching.empty()) lock_left = lock_right = true;

    if (add_to_matching && linear) {
      for (const Edge& e : g.edges()) {
        const Vertex x = e.a, y = e.b;
        if (used[x] || used[y] || geo.left[x] != geo.left[y]) continue;
        const Vertex a = at[x], b = at[y];
        if (to_right(a) || to_left(a) || to_right(b) || to_left(b)) continue;
        bool flipped = false;
        if (g.shape() == Shape::Path) {
          const bool forward = walk_index[x] < walk_index[y];
          const bool dest_forward = walk_index[dest(a)] < walk_index[dest(b)];
          flipped = forward != dest_forward;
        } else {
          flipped = side_distance(y, dest(a)) + side_distance(x, dest(b)) <
                    side_distance(x, dest(a)) + side_distance(y, dest(b));
        }
        if (flipped) {
          used[x] = used[y] = 1;
          matching.emplace_back(x, y);
        }
      }
    }

    for (auto [x, y] : matching) {
      std::swap(at[x], at[y]);
      pos[at[x]] = x;
      pos[at[y]] = y;
    }
    if (!matching.empty()) {
      std::sort(matching.begin(), matching.end());
      out.rounds.push_back(std::move(matching));
    }
  }

  for (Vertex v = 0; v < n; ++v) out.misplaced += dest(at[v]) != v;
  return out;
}

namespace {

struct Context {
  const LrOptions& options;
  bool fallback = false;
  unsigned hybrid_solves = 0;
  unsigned hybrid_timeouts = 0;
};

Permutation side_permutation(const Side& side, const std::vector<Vertex>& at,
                             const Permutation& target) {
  std::vector<Vertex> dest(side.vertices.size());
  for (Vertex i = 0; i < side.vertices.size(); ++i) {
    const Vertex d = target.dest(at[side.vertices[i]]);
    auto it = std::lower_bound(side.vertices.begin(), side.vertices.end(), d);
    if (it == side.vertices.end() || *it != d) throw std::logic_error("token left on wrong side");
    dest[i] = static_cast<Vertex>(it - side.vertices.begin());
  }
  return Permutation(std::move(dest));
}

Circuit route(const CouplingGraph& g, const Permutation& p, Context& ctx) {
  const unsigned n = g.size();
  if (n <= 1 || p.is_identity()) return Circuit(n);

  const LrOptions& opt = ctx.options;
  if (opt.hybrid_threshold > 1 && n <= opt.hybrid_threshold) {
    SynthesisResult r = exact_synth(g, p, Primitive::Swap, Objective::Depth, opt.exact);
    if (!r.timed_out) {
      ++ctx.hybrid_solves;
      return r.circuit;
    }
    ++ctx.hybrid_timeouts;
  }

  const unsigned samples = opt.samples.value_or(n <= 16 ? n : 1);
  const auto parts = partition_graph(g, std::max(1u, samples));
  std::optional<std::size_t> best;
  std::vector<RoutingOutcome> outcomes;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    outcomes.push_back(routing_rounds(g, parts[i], p, opt.cap_factor * n, opt.add_to_matching));
    const RoutingOutcome& o = outcomes.back();
    if (o.capped) continue;
    if (!best || std::make_pair(o.rounds.size(), o.misplaced) <
                     std::make_pair(outcomes[*best].rounds.size(), outcomes[*best].misplaced)) {
      best = i;
    }
  }
  if (!best) {
    ctx.fallback = true;
    return g.shape() == Shape::Path ? odd_even_sort(g, p) : peel_tokens(g, p);
  }

  const Partition& part = parts[*best];
  const RoutingOutcome& o = outcomes[*best];
  Circuit out(n);
  for (const auto& round : o.rounds) {
    for (auto [x, y] : round) out.add_swap(x, y);
  }
  const Circuit left = remap(route(part.left.graph, side_permutation(part.left, o.at, p), ctx),
                             part.left.vertices, n);
  const Circuit right =
      remap(route(part.right.graph, side_permutation(part.right, o.at, p), ctx),
            part.right.vertices, n);
  out.append(merge_parallel(left, right));
  return out;
}

}  // namespace

SynthesisResult lr_synth(const CouplingGraph& g, const Permutation& target,
                         const LrOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  if (target.size() != g.size()) throw InvalidInput("permutation size differs from graph size");
  if (options.cap_factor == 0) throw InvalidInput("iteration cap factor must be positive");
  if (options.samples && *options.samples == 0) throw InvalidInput("samples must be positive");

  Context ctx{options};
  SynthesisResult r;
  r.method = options.hybrid_threshold > 1 ? "lr-synth-hybrid" : "lr-synth";
  r.objective = Objective::Depth;
  r.circuit = route(g, target, ctx);
  const VerifyResult ok = verify(r.circuit, g, target);
  if (!ok) throw std::logic_error("LR-Synth produced an invalid circuit: " + ok.detail);
  r.optimum = r.circuit.depth();
  r.fallback = ctx.fallback;
  if (ctx.fallback) r.note = "iteration cap hit on every split of some subgraph; used fallback";
  if (ctx.hybrid_timeouts) {
    if (!r.note.empty()) r.note += "; ";
    r.note += std::to_string(ctx.hybrid_timeouts) + " exact side solve(s) timed out";
  }
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace permsynth
