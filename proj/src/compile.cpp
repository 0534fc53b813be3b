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

#include "permsynth/compile.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>

namespace permsynth {

namespace {

// Unbiased draw from [0, bound); std::uniform_int_distribution is not
// specified bit-for-bit across standard libraries.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

bool same_pair(const Gate& g, Vertex a, Vertex b) {
  return g.qubits.size() == 2 &&
         ((g.qubits[0] == a && g.qubits[1] == b) || (g.qubits[0] == b && g.qubits[1] == a));
}

Circuit swap_network(unsigned n, const std::vector<std::pair<Vertex, Vertex>>& swaps) {
  Circuit c(n);
  for (auto [a, b] : swaps) c.add_swap(a, b);
  return c;
}

}  // namespace

Circuit generate_qv(unsigned n, unsigned layers, std::uint64_t seed) {
  if (n < 2) throw InvalidInput("a QV circuit needs at least 2 qubits");
  if (layers < 1) throw InvalidInput("a QV circuit needs at least 1 layer");
  std::mt19937_64 rng(seed);
  Circuit c(n);
  unsigned next_id = 0;
  std::vector<Vertex> order(n);
  for (unsigned l = 0; l < layers; ++l) {
    for (Vertex v = 0; v < n; ++v) order[v] = v;
    for (unsigned i = n - 1; i > 0; --i) {
      std::swap(order[i], order[draw_below(rng, i + 1)]);
    }
    for (unsigned i = 0; i + 1 < n; i += 2) {
      c.add(Gate::unitary(std::min(order[i], order[i + 1]), std::max(order[i], order[i + 1]),
                          next_id++));
    }
  }
  return c;
}

Circuit route(const Circuit& logical, const CouplingGraph& g, std::uint64_t seed) {
  const unsigned n = g.size();
  if (logical.qubits() > n) throw InvalidInput("circuit is wider than the coupling graph");
  std::mt19937_64 rng(seed);
  std::vector<Vertex> phys(n), log(n);
  for (Vertex v = 0; v < n; ++v) phys[v] = log[v] = v;

  Circuit out(n);
  std::vector<Vertex> hops;
  for (const Gate& gate : logical.gates()) {
    if (gate.kind != GateKind::Unitary) throw InvalidInput("route expects unitaries only");
    Vertex pa = phys[gate.qubits[0]];
    const Vertex pb = phys[gate.qubits[1]];
    while (g.distance(pa, pb) > 1) {
      const unsigned d = g.distance(pa, pb);
      hops.clear();
      for (Vertex x : g.neighbors(pa)) {
        if (g.distance(x, pb) + 1 == d) hops.push_back(x);
      }
      std::sort(hops.begin(), hops.end());
      const Vertex x = hops[hops.size() == 1 ? 0 : draw_below(rng, hops.size())];
      out.add_swap(std::min(pa, x), std::max(pa, x));
      std::swap(log[pa], log[x]);
      phys[log[pa]] = pa;
      phys[log[x]] = x;
      pa = x;
    }
    out.add(Gate::unitary(pa, pb, gate.unitary_id, gate.mirrored));
  }
  return out;
}

Circuit absorb_swaps(const Circuit& c, AbsorbStats* stats) {
  std::vector<Gate> gates = c.gates();
  AbsorbStats local;
  bool changed = true;
  while (changed) {
    changed = false;
    ++local.passes;
    std::vector<char> gone(gates.size(), 0);
    for (std::size_t i = 0; i < gates.size(); ++i) {
      if (gates[i].kind != GateKind::Swap) continue;
      const Vertex a = gates[i].qubits[0], b = gates[i].qubits[1];
      auto neighbour = [&](long step) -> long {
        for (long j = static_cast<long>(i) + step; j >= 0 && j < static_cast<long>(gates.size());
             j += step) {
          if (gone[j]) continue;
          if (gates[j].touches(a) || gates[j].touches(b)) return j;
        }
        return -1;
      };
      for (long step : {-1L, 1L}) {
        const long j = neighbour(step);
        if (j >= 0 && gates[j].kind == GateKind::Unitary && same_pair(gates[j], a, b)) {
          gates[j].mirrored = !gates[j].mirrored;
          gone[i] = 1;
          ++local.absorbed;
          changed = true;
          break;
        }
      }
    }
    std::vector<Gate> kept;
    kept.reserve(gates.size());
    for (std::size_t i = 0; i < gates.size(); ++i) {
      if (!gone[i]) kept.push_back(std::move(gates[i]));
    }
    gates = std::move(kept);
  }
  if (stats) *stats = local;
  return Circuit(c.qubits(), std::move(gates));
}

Circuit collapse_swap_blocks(const Circuit& c, const CouplingGraph& g) {
  const unsigned n = c.qubits();
  struct Bag {
    std::size_t first = 0;
    std::vector<std::pair<Vertex, Vertex>> swaps;
    std::vector<char> blocked;
  };
  std::vector<Bag> bags;
  std::vector<long> bag_of(c.size(), -1);

  const auto& gates = c.gates();
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& gate = gates[i];
    long home = -1;
    if (gate.kind == GateKind::Swap) {
      const Vertex a = gate.qubits[0], b = gate.qubits[1];
      for (std::size_t k = 0; k < bags.size(); ++k) {
        if (!bags[k].blocked[a] && !bags[k].blocked[b]) {
          home = static_cast<long>(k);
          break;
        }
      }
      if (home < 0) {
        bags.push_back({i, {}, std::vector<char>(n, 0)});
        home = static_cast<long>(bags.size() - 1);
      }
      bags[home].swaps.emplace_back(a, b);
      bag_of[i] = home;
    }
    // Everything outside a bag is a barrier for that bag on its qubits.
    for (std::size_t k = 0; k < bags.size(); ++k) {
      if (static_cast<long>(k) == home) continue;
      for (Vertex v : gate.qubits) bags[k].blocked[v] = 1;
    }
  }

  Circuit out(n);
  for (std::size_t i = 0; i < gates.size(); ++i) {
    if (bag_of[i] < 0) {
      out.add(gates[i]);
      continue;
    }
    const Bag& bag = bags[bag_of[i]];
    if (bag.first != i) continue;

    std::vector<Vertex> terminals;
    for (auto [a, b] : bag.swaps) {
      terminals.push_back(a);
      terminals.push_back(b);
    }
    std::sort(terminals.begin(), terminals.end());
    terminals.erase(std::unique(terminals.begin(), terminals.end()), terminals.end());
    std::vector<Vertex> qubits = terminals;
    if (!is_connected(g, terminals)) {
      for (const Edge& e : steiner_tree(g, terminals)) {
        qubits.push_back(e.a);
        qubits.push_back(e.b);
      }
      std::sort(qubits.begin(), qubits.end());
      qubits.erase(std::unique(qubits.begin(), qubits.end()), qubits.end());
    }

    // token[v]: index into `qubits` of the token now on v.
    std::vector<long> token(n, -1);
    for (std::size_t k = 0; k < qubits.size(); ++k) token[qubits[k]] = static_cast<long>(k);
    for (auto [a, b] : bag.swaps) std::swap(token[a], token[b]);
    std::vector<Vertex> dest(qubits.size());
    for (Vertex v : qubits) dest[token[v]] = v;
    out.add(Gate::perm_block(qubits, dest, bag.swaps));
  }
  return out;
}

Circuit expand_blocks(const Circuit& c) {
  Circuit out(c.qubits());
  for (const Gate& g : c.gates()) {
    if (g.kind == GateKind::PermBlock) {
      for (auto [a, b] : g.block_swaps) out.add_swap(a, b);
    } else {
      out.add(g);
    }
  }
  return out;
}

Metrics global_metrics(const Circuit& c) {
  const CnotMetrics m = cnot_equivalent(expand_blocks(c));
  return {m.size, m.depth};
}

bool improves(const Metrics& candidate, const Metrics& incumbent, Objective objective) {
  const auto primary = [&](const Metrics& m) -> std::size_t {
    return objective == Objective::Size ? m.size : m.depth;
  };
  const auto secondary = [&](const Metrics& m) -> std::size_t {
    return objective == Objective::Size ? m.depth : m.size;
  };
  if (primary(candidate) != primary(incumbent)) return primary(candidate) < primary(incumbent);
  return secondary(candidate) < secondary(incumbent);
}

std::pair<Circuit, CompilationReport> resynthesize(const Circuit& c, const CouplingGraph& g,
                                                   Method method, Objective objective,
                                                   const ResynthOptions& options) {
  const unsigned n = c.qubits();
  std::vector<std::size_t> block_at;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c.gates()[i].kind == GateKind::PermBlock) block_at.push_back(i);
  }

  CompilationReport report;
  report.objective = objective;
  report.method = std::string(method_name(method));
  report.before = global_metrics(c);
  report.blocks.resize(block_at.size());
  std::vector<Circuit> replacement(block_at.size());

  MethodOptions mopts = options.method;
  if (options.block_time_limit) mopts.exact.time_limit = options.block_time_limit;

  auto work = [&](std::size_t k) {
    const Gate& blk = c.gates()[block_at[k]];
    BlockRecord& rec = report.blocks[k];
    rec.id = static_cast<unsigned>(k);
    rec.qubits = blk.qubits;
    rec.original = global_metrics(swap_network(n, blk.block_swaps));

    std::vector<Vertex> local(n, 0);
    for (std::size_t i = 0; i < blk.qubits.size(); ++i) local[blk.qubits[i]] = i;
    std::vector<Vertex> table(blk.qubits.size());
    for (std::size_t i = 0; i < blk.qubits.size(); ++i) table[i] = local[blk.block_dest[i]];
    const Permutation p(std::move(table));
    const CouplingGraph sub = g.induced(blk.qubits);

    const auto t0 = std::chrono::steady_clock::now();
    SynthesisResult r;
    try {
      r = synthesize(method, sub, p, objective, mopts);
    } catch (const BudgetExceeded&) {
      r.timed_out = true;
    }
    rec.synth_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (r.timed_out) {
      rec.timed_out = true;
      return;
    }
    if (auto v = verify(r.circuit, sub, p); !v) {
      throw std::logic_error("block resynthesis failed verification: " + v.detail);
    }
    const Circuit placed = remap(r.circuit, blk.qubits, n);
    rec.synthesized = global_metrics(placed);
    rec.accepted = improves(*rec.synthesized, rec.original, objective);
    if (rec.accepted) replacement[k] = placed;
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(options.workers, block_at.size()));
  if (workers <= 1) {
    for (std::size_t k = 0; k < block_at.size(); ++k) work(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k; (k = next++) < block_at.size();) {
          try {
            work(k);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  // Flatten with the blocks selected by `use` replaced.
  auto flatten = [&](const std::vector<char>& use) {
    Circuit out(n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      const Gate& gate = c.gates()[i];
      if (gate.kind != GateKind::PermBlock) {
        out.add(gate);
        continue;
      }
      if (use[k]) {
        out.append(replacement[k]);
      } else {
        for (auto [a, b] : gate.block_swaps) out.add_swap(a, b);
      }
      ++k;
    }
    return out;
  };

  std::vector<char> use(block_at.size(), 0);
  for (std::size_t k = 0; k < block_at.size(); ++k) {
    if (!report.blocks[k].accepted) continue;
    use[k] = 1;
    report.blocks[k].global_depth_delta =
        static_cast<int>(global_metrics(flatten(use)).depth) - static_cast<int>(report.before.depth);
    use[k] = 0;
  }
  for (std::size_t k = 0; k < block_at.size(); ++k) use[k] = report.blocks[k].accepted;
  Circuit final_circuit = flatten(use);
  report.after = global_metrics(final_circuit);
  return {std::move(final_circuit), std::move(report)};
}

Replay replay(const Circuit& c) {
  const unsigned n = c.qubits();
  Replay r;
  r.state = Gf2Matrix::identity(n);
  auto logical_on = [&](Vertex row) -> long {
    for (unsigned k = 0; k < n; ++k) {
      if (r.state.get(row, k)) return r.state.row_is_unit(row, k) ? static_cast<long>(k) : -1;
    }
    return -1;
  };
  for (const Gate& g : c.gates()) {
    switch (g.kind) {
      case GateKind::Cnot:
        r.state.add_row(g.qubits[0], g.qubits[1]);
        break;
      case GateKind::Swap:
        r.state.swap_rows(g.qubits[0], g.qubits[1]);
        break;
      case GateKind::Unitary: {
        const long a = logical_on(g.qubits[0]), b = logical_on(g.qubits[1]);
        if (a < 0 || b < 0) {
          r.ok = false;
          r.error = "unitary " + std::to_string(g.unitary_id) + " meets a mixed qubit";
          return r;
        }
        r.meetings.push_back({g.unitary_id,
                              {static_cast<unsigned>(std::min(a, b)),
                               static_cast<unsigned>(std::max(a, b))}});
        if (g.mirrored) r.state.swap_rows(g.qubits[0], g.qubits[1]);
        break;
      }
      case GateKind::PermBlock: {
        const Gf2Matrix before = r.state;
        for (std::size_t i = 0; i < g.qubits.size(); ++i) {
          for (unsigned k = 0; k < n; ++k) {
            r.state.set(g.block_dest[i], k, before.get(g.qubits[i], k));
          }
        }
        break;
      }
    }
  }
  return r;
}

bool same_action(const Circuit& a, const Circuit& b) {
  const Replay ra = replay(a), rb = replay(b);
  return ra.ok && rb.ok && ra.meetings == rb.meetings && ra.state == rb.state;
}

PipelineResult compile_pipeline(const CouplingGraph& g, const PipelineOptions& options) {
  if (options.qubits > g.size()) throw InvalidInput("more qubits than graph vertices");
  PipelineResult out;
  const Circuit logical = generate_qv(options.qubits, options.layers, options.seed);
  const Circuit wide(g.size(), logical.gates());
  out.routed = route(wide, g, options.seed);
  out.absorbed = absorb_swaps(out.routed);
  out.blocked = collapse_swap_blocks(out.absorbed, g);
  auto [circuit, report] =
      resynthesize(out.blocked, g, options.method, options.objective, options.resynth);
  out.final_circuit = std::move(circuit);
  out.report = std::move(report);
  return out;
}

nlohmann::ordered_json report_to_json(const CompilationReport& r) {
  auto metrics = [](const Metrics& m) {
    nlohmann::ordered_json j;
    j["size"] = m.size;
    j["depth"] = m.depth;
    return j;
  };
  nlohmann::ordered_json j;
  j["before"] = metrics(r.before);
  j["after"] = metrics(r.after);
  j["objective"] = std::string(objective_name(r.objective));
  j["method"] = r.method;
  j["blocks"] = nlohmann::ordered_json::array();
  for (const BlockRecord& b : r.blocks) {
    nlohmann::ordered_json jb;
    jb["id"] = b.id;
    jb["qubits"] = b.qubits;
    jb["original"] = metrics(b.original);
    jb["synthesized"] = b.synthesized ? metrics(*b.synthesized) : nlohmann::ordered_json();
    jb["accepted"] = b.accepted;
    jb["timed_out"] = b.timed_out;
    jb["synth_ms"] = b.synth_ms;
    jb["global_depth_delta"] =
        b.global_depth_delta ? nlohmann::ordered_json(*b.global_depth_delta) : nlohmann::ordered_json();
    j["blocks"].push_back(std::move(jb));
  }
  return j;
}

}  // namespace permsynth
