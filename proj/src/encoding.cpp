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

#include "permsynth/encoding.hpp"

#include <algorithm>
#include <string>
#include <tuple>

namespace permsynth {

std::string_view objective_name(Objective o) {
  return o == Objective::Size ? "size" : "depth";
}

std::string_view primitive_name(Primitive p) { return p == Primitive::Cnot ? "cnot" : "swap"; }

Objective parse_objective(std::string_view s) {
  if (s == "size") return Objective::Size;
  if (s == "depth") return Objective::Depth;
  throw InvalidInput("objective must be 'size' or 'depth', got '" + std::string(s) + "'");
}

int VarMap::cnot_var_for(unsigned d, Vertex control, Vertex target) const {
  const Edge key(control, target);
  auto it = std::lower_bound(edges.begin(), edges.end(), key);
  if (it == edges.end() || *it != key) return 0;
  const unsigned e = static_cast<unsigned>(it - edges.begin());
  return cnot_var(d, e, control == key.a ? 0 : 1);
}

namespace {

VarMap allocate(CnfFormula& f, const CouplingGraph& g, unsigned bound, Primitive p,
                Objective objective, const EncodeOptions& options) {
  VarMap vm;
  vm.primitive = p;
  vm.objective = objective;
  vm.n = g.size();
  vm.bound = bound;
  vm.edges = g.edges();
  const long long state_count = static_cast<long long>(bound + 1) * vm.n * vm.n;
  const long long gate_count = static_cast<long long>(bound) * vm.edges.size() *
                               (p == Primitive::Cnot ? 2 : 1);
  if (state_count + gate_count > options.max_vars) {
    throw BudgetExceeded("bound " + std::to_string(bound) + " needs " +
                         std::to_string(state_count + gate_count) +
                         " variables, over the budget of " + std::to_string(options.max_vars));
  }
  vm.state_base = f.new_vars(static_cast<int>(state_count));
  vm.gate_base = gate_count > 0 ? f.new_vars(static_cast<int>(gate_count)) : f.num_vars() + 1;
  vm.last_var = f.num_vars();
  return vm;
}

// Incident gate variables of vertex v in layer d (both directions for CNOT).
std::vector<Lit> incident_gates(const VarMap& vm, unsigned d, Vertex v) {
  std::vector<Lit> out;
  for (unsigned e = 0; e < vm.edges.size(); ++e) {
    if (!vm.edges[e].touches(v)) continue;
    if (vm.primitive == Primitive::Cnot) {
      out.push_back(vm.cnot_var(d, e, 0));
      out.push_back(vm.cnot_var(d, e, 1));
    } else {
      out.push_back(vm.swap_var(d, e));
    }
  }
  return out;
}

std::vector<Lit> layer_gates(const VarMap& vm, unsigned d) {
  std::vector<Lit> out;
  for (unsigned e = 0; e < vm.edges.size(); ++e) {
    if (vm.primitive == Primitive::Cnot) {
      out.push_back(vm.cnot_var(d, e, 0));
      out.push_back(vm.cnot_var(d, e, 1));
    } else {
      out.push_back(vm.swap_var(d, e));
    }
  }
  return out;
}

// Boundary conditions plus the per-layer cardinality constraints shared by
// both primitives.
void add_common(CnfFormula& f, const VarMap& vm, const Gf2Matrix& target) {
  const unsigned n = vm.n, D = vm.bound;
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned k = 0; k < n; ++k) {
      const Lit first = vm.state_var(0, i, k);
      f.add_clause({i == k ? first : -first});
      const Lit last = vm.state_var(D, i, k);
      f.add_clause({target.get(i, k) ? last : -last});
    }
  }
  for (unsigned d = 0; d < D; ++d) {
    const auto all = layer_gates(vm, d);
    if (vm.objective == Objective::Size) {
      f.exactly_one(all);
    } else {
      f.at_least_one(all);
      for (Vertex v = 0; v < n; ++v) f.at_most_one(incident_gates(vm, d, v));
    }
  }
}

// Light-cone bounds: after d layers row i only mixes original rows within
// distance d, and it must still be able to reach the target rows within the
// remaining D - d layers.
void add_pruning(CnfFormula& f, const VarMap& vm, const CouplingGraph& g,
                 const Gf2Matrix& target) {
  const unsigned n = vm.n, D = vm.bound;
  for (unsigned d = 1; d < D; ++d) {
    for (unsigned i = 0; i < n; ++i) {
      for (unsigned k = 0; k < n; ++k) {
        bool possible = g.distance(i, k) <= d;
        if (possible) {
          possible = false;
          for (unsigned j = 0; j < n && !possible; ++j) {
            possible = target.get(j, k) && g.distance(i, j) <= D - d;
          }
        }
        if (!possible) f.add_clause({-vm.state_var(d, i, k)});
      }
    }
  }
}

// Gate variables of layer d with the qubit pair each acts on.
struct LayerGate {
  Lit var;
  Vertex a, b;
};

std::vector<LayerGate> layer_gate_list(const VarMap& vm, unsigned d) {
  std::vector<LayerGate> out;
  for (unsigned e = 0; e < vm.edges.size(); ++e) {
    const Vertex a = vm.edges[e].a, b = vm.edges[e].b;
    if (vm.primitive == Primitive::Cnot) {
      out.push_back({vm.cnot_var(d, e, 0), a, b});
      out.push_back({vm.cnot_var(d, e, 1), b, a});
    } else {
      out.push_back({vm.swap_var(d, e), a, b});
    }
  }
  return out;
}

// Any optimal circuit can be rewritten into a form obeying these clauses
// without changing its size or depth, so the first satisfiable bound stays
// the optimum while the refutations below it get much cheaper.
void add_symmetry_breaking(CnfFormula& f, const VarMap& vm) {
  for (unsigned d = 1; d < vm.bound; ++d) {
    const auto prev = layer_gate_list(vm, d - 1);
    const auto cur = layer_gate_list(vm, d);
    for (std::size_t x = 0; x < cur.size(); ++x) {
      // A repeated gate cancels with its predecessor.
      f.add_clause({-prev[x].var, -cur[x].var});
      if (vm.objective == Objective::Depth) {
        // ASAP: each gate touches a qubit that was busy one layer earlier.
        std::vector<Lit> clause{-cur[x].var};
        for (Vertex q : {cur[x].a, cur[x].b}) {
          for (Lit l : incident_gates(vm, d - 1, q)) clause.push_back(l);
        }
        std::sort(clause.begin() + 1, clause.end());
        clause.erase(std::unique(clause.begin() + 1, clause.end()), clause.end());
        f.add_clause(clause);
      } else {
        // Gates on disjoint qubits commute; keep them in index order.
        for (std::size_t y = x + 1; y < prev.size(); ++y) {
          const auto& later = cur[x];
          const auto& earlier = prev[y];
          const bool disjoint = later.a != earlier.a && later.a != earlier.b &&
                                later.b != earlier.a && later.b != earlier.b;
          if (disjoint) f.add_clause({-earlier.var, -later.var});
        }
      }
    }
  }
}

void validate_target(const CouplingGraph& g, const Gf2Matrix& target) {
  if (target.size() != g.size()) throw InvalidInput("target size differs from graph size");
  if (!target.is_invertible()) throw InvalidInput("target matrix is not invertible");
}

}  // namespace

Encoding encode_cnot(const CouplingGraph& g, const Gf2Matrix& target, unsigned bound,
                     Objective objective, const EncodeOptions& options) {
  validate_target(g, target);
  Encoding enc;
  CnfFormula& f = enc.formula;
  VarMap& vm = enc.vars;
  vm = allocate(f, g, bound, Primitive::Cnot, objective, options);
  add_common(f, vm, target);

  const unsigned n = vm.n;
  for (unsigned d = 0; d < bound; ++d) {
    for (unsigned e = 0; e < vm.edges.size(); ++e) {
      for (unsigned dir = 0; dir < 2; ++dir) {
        const Vertex c = dir == 0 ? vm.edges[e].a : vm.edges[e].b;
        const Vertex t = dir == 0 ? vm.edges[e].b : vm.edges[e].a;
        const Lit gate = vm.cnot_var(d, e, dir);
        // C3: gate -> row t at d+1 equals row t XOR row c at d.
        for (unsigned j = 0; j < n; ++j) {
          const Lit out = vm.state_var(d + 1, t, j);
          const Lit a = vm.state_var(d, t, j);
          const Lit b = vm.state_var(d, c, j);
          f.add_clause({-gate, -out, a, b});
          f.add_clause({-gate, -out, -a, -b});
          f.add_clause({-gate, out, -a, b});
          f.add_clause({-gate, out, a, -b});
        }
      }
    }
    // C4: a changed entry in row t needs a gate targeting t.
    for (Vertex t = 0; t < n; ++t) {
      std::vector<Lit> targeting;
      for (unsigned e = 0; e < vm.edges.size(); ++e) {
        if (vm.edges[e].a == t) targeting.push_back(vm.cnot_var(d, e, 1));
        if (vm.edges[e].b == t) targeting.push_back(vm.cnot_var(d, e, 0));
      }
      for (unsigned j = 0; j < n; ++j) {
        const Lit now = vm.state_var(d, t, j);
        const Lit next = vm.state_var(d + 1, t, j);
        std::vector<Lit> up{-next, now}, down{next, -now};
        up.insert(up.end(), targeting.begin(), targeting.end());
        down.insert(down.end(), targeting.begin(), targeting.end());
        f.add_clause(up);
        f.add_clause(down);
      }
    }
  }
  if (options.reachability_pruning) add_pruning(f, vm, g, target);
  if (options.symmetry_breaking) add_symmetry_breaking(f, vm);
  return enc;
}

Encoding encode_swap(const CouplingGraph& g, const Permutation& target, unsigned bound,
                     Objective objective, const EncodeOptions& options) {
  if (target.size() != g.size()) throw InvalidInput("permutation size differs from graph size");
  const Gf2Matrix goal = Gf2Matrix::from_permutation(target);
  Encoding enc;
  CnfFormula& f = enc.formula;
  VarMap& vm = enc.vars;
  vm = allocate(f, g, bound, Primitive::Swap, objective, options);
  add_common(f, vm, goal);

  const unsigned n = vm.n;
  for (unsigned d = 0; d < bound; ++d) {
    for (unsigned e = 0; e < vm.edges.size(); ++e) {
      const Vertex u = vm.edges[e].a, v = vm.edges[e].b;
      const Lit gate = vm.swap_var(d, e);
      // C3 analogue: a SWAP exchanges rows u and v.
      for (unsigned k = 0; k < n; ++k) {
        const Lit u_next = vm.state_var(d + 1, u, k), v_now = vm.state_var(d, v, k);
        const Lit v_next = vm.state_var(d + 1, v, k), u_now = vm.state_var(d, u, k);
        f.add_clause({-gate, -u_next, v_now});
        f.add_clause({-gate, u_next, -v_now});
        f.add_clause({-gate, -v_next, u_now});
        f.add_clause({-gate, v_next, -u_now});
      }
    }
    // C4 analogue: a row only changes when a SWAP touches it.
    for (Vertex v = 0; v < n; ++v) {
      const auto touching = incident_gates(vm, d, v);
      for (unsigned k = 0; k < n; ++k) {
        const Lit now = vm.state_var(d, v, k);
        const Lit next = vm.state_var(d + 1, v, k);
        std::vector<Lit> up{-next, now}, down{next, -now};
        up.insert(up.end(), touching.begin(), touching.end());
        down.insert(down.end(), touching.begin(), touching.end());
        f.add_clause(up);
        f.add_clause(down);
      }
    }
  }
  if (options.reachability_pruning) add_pruning(f, vm, g, goal);
  if (options.symmetry_breaking) add_symmetry_breaking(f, vm);
  return enc;
}

Circuit decode(const std::vector<bool>& model, const VarMap& vm) {
  Circuit c(vm.n);
  for (unsigned d = 0; d < vm.bound; ++d) {
    struct Picked {
      Vertex lo, hi, first, second;
    };
    std::vector<Picked> picked;
    for (unsigned e = 0; e < vm.edges.size(); ++e) {
      const Edge& edge = vm.edges[e];
      if (vm.primitive == Primitive::Cnot) {
        if (model.at(vm.cnot_var(d, e, 0))) picked.push_back({edge.a, edge.b, edge.a, edge.b});
        if (model.at(vm.cnot_var(d, e, 1))) picked.push_back({edge.a, edge.b, edge.b, edge.a});
      } else if (model.at(vm.swap_var(d, e))) {
        picked.push_back({edge.a, edge.b, edge.a, edge.b});
      }
    }
    std::vector<char> busy(vm.n, 0);
    for (const auto& p : picked) {
      if (busy[p.lo] || busy[p.hi]) {
        throw std::logic_error("decode: two gates share qubit in layer " + std::to_string(d));
      }
      busy[p.lo] = busy[p.hi] = 1;
    }
    std::sort(picked.begin(), picked.end(), [](const Picked& x, const Picked& y) {
      return std::tie(x.lo, x.hi) < std::tie(y.lo, y.hi);
    });
    for (const auto& p : picked) {
      if (vm.primitive == Primitive::Cnot) {
        c.add_cnot(p.first, p.second);
      } else {
        c.add_swap(p.first, p.second);
      }
    }
  }
  return c;
}

}  // namespace permsynth
