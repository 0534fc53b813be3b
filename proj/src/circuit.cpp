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

#include "permsynth/circuit.hpp"

#include <algorithm>
#include <set>

namespace permsynth {

std::string_view gate_kind_name(GateKind k) {
  switch (k) {
    case GateKind::Cnot: return "cnot";
    case GateKind::Swap: return "swap";
    case GateKind::Unitary: return "u2";
    case GateKind::PermBlock: return "perm";
  }
  return "?";
}

Gate Gate::cnot(Vertex control, Vertex target) {
  Gate g;
  g.kind = GateKind::Cnot;
  g.qubits = {control, target};
  return g;
}

Gate Gate::swap(Vertex a, Vertex b) {
  Gate g;
  g.kind = GateKind::Swap;
  g.qubits = {a, b};
  return g;
}

Gate Gate::unitary(Vertex a, Vertex b, unsigned id, bool mirrored) {
  Gate g;
  g.kind = GateKind::Unitary;
  g.qubits = {a, b};
  g.unitary_id = id;
  g.mirrored = mirrored;
  return g;
}

Gate Gate::perm_block(std::vector<Vertex> qubits, std::vector<Vertex> dest,
                      std::vector<std::pair<Vertex, Vertex>> swaps) {
  if (qubits.size() != dest.size()) throw InvalidInput("perm block size mismatch");
  std::vector<Vertex> sorted_q = qubits, sorted_d = dest;
  std::sort(sorted_q.begin(), sorted_q.end());
  std::sort(sorted_d.begin(), sorted_d.end());
  if (sorted_q != sorted_d) throw InvalidInput("perm block destinations must permute its qubits");
  Gate g;
  g.kind = GateKind::PermBlock;
  g.qubits = std::move(qubits);
  g.block_dest = std::move(dest);
  g.block_swaps = std::move(swaps);
  return g;
}

bool Gate::touches(Vertex v) const {
  return std::find(qubits.begin(), qubits.end(), v) != qubits.end();
}

Circuit::Circuit(unsigned n, std::vector<Gate> gates) : n_(n) {
  for (auto& g : gates) add(std::move(g));
}

void Circuit::add(Gate g) {
  if (g.qubits.size() < 2 && g.kind != GateKind::PermBlock) {
    throw InvalidInput("gate needs two qubits");
  }
  std::set<Vertex> distinct(g.qubits.begin(), g.qubits.end());
  if (distinct.size() != g.qubits.size()) throw InvalidInput("gate qubits must be distinct");
  for (Vertex q : g.qubits) {
    if (q >= n_) throw InvalidInput("gate qubit " + std::to_string(q) + " out of range");
  }
  gates_.push_back(std::move(g));
}

void Circuit::append(const Circuit& other) {
  if (other.n_ > n_) throw InvalidInput("cannot append a wider circuit");
  for (const auto& g : other.gates_) add(g);
}

std::vector<unsigned> Circuit::layer_of_gates() const {
  std::vector<unsigned> frontier(n_, 0);
  std::vector<unsigned> layer(gates_.size());
  for (std::size_t i = 0; i < gates_.size(); ++i) {
    unsigned l = 0;
    for (Vertex q : gates_[i].qubits) l = std::max(l, frontier[q]);
    layer[i] = l;
    for (Vertex q : gates_[i].qubits) frontier[q] = l + 1;
  }
  return layer;
}

unsigned Circuit::depth() const {
  auto layer = layer_of_gates();
  unsigned d = 0;
  for (unsigned l : layer) d = std::max(d, l + 1);
  return d;
}

std::vector<std::vector<Gate>> Circuit::layers() const {
  auto layer = layer_of_gates();
  std::vector<std::vector<Gate>> out(depth());
  for (std::size_t i = 0; i < gates_.size(); ++i) out[layer[i]].push_back(gates_[i]);
  return out;
}

std::size_t Circuit::count(GateKind k) const {
  return static_cast<std::size_t>(std::count_if(
      gates_.begin(), gates_.end(), [k](const Gate& g) { return g.kind == k; }));
}

bool Circuit::only(std::initializer_list<GateKind> kinds) const {
  return std::all_of(gates_.begin(), gates_.end(), [&](const Gate& g) {
    return std::find(kinds.begin(), kinds.end(), g.kind) != kinds.end();
  });
}

Circuit to_cnots(const Circuit& c) {
  Circuit out(c.qubits());
  for (const Gate& g : c.gates()) {
    switch (g.kind) {
      case GateKind::Cnot:
        out.add(g);
        break;
      case GateKind::Swap:
        out.add_cnot(g.qubits[0], g.qubits[1]);
        out.add_cnot(g.qubits[1], g.qubits[0]);
        out.add_cnot(g.qubits[0], g.qubits[1]);
        break;
      default:
        throw InvalidInput("to_cnots: circuit contains a " +
                           std::string(gate_kind_name(g.kind)) + " gate");
    }
  }
  return out;
}

CnotMetrics cnot_equivalent(const Circuit& c) {
  Circuit out(c.qubits());
  for (const Gate& g : c.gates()) {
    if (g.kind == GateKind::Swap) {
      out.add_cnot(g.qubits[0], g.qubits[1]);
      out.add_cnot(g.qubits[1], g.qubits[0]);
      out.add_cnot(g.qubits[0], g.qubits[1]);
    } else {
      out.add(g);
    }
  }
  return {out.size(), out.depth()};
}

Circuit compose(const Circuit& a, const Circuit& b) {
  Circuit out(std::max(a.qubits(), b.qubits()));
  out.append(a);
  out.append(b);
  return out;
}

Circuit remap(const Circuit& c, const std::vector<Vertex>& embedding, unsigned n) {
  if (embedding.size() < c.qubits()) throw InvalidInput("remap: embedding too short");
  std::set<Vertex> image;
  for (Vertex v : embedding) {
    if (v >= n) throw InvalidInput("remap: embedding target out of range");
    if (!image.insert(v).second) throw InvalidInput("remap: embedding not injective");
  }
  Circuit out(n);
  for (Gate g : c.gates()) {
    for (auto& q : g.qubits) q = embedding[q];
    for (auto& d : g.block_dest) d = embedding[d];
    for (auto& [x, y] : g.block_swaps) {
      x = embedding[x];
      y = embedding[y];
    }
    out.add(std::move(g));
  }
  return out;
}

Circuit merge_parallel(const Circuit& a, const Circuit& b) {
  auto la = a.layers();
  auto lb = b.layers();
  Circuit out(std::max(a.qubits(), b.qubits()));
  for (std::size_t i = 0; i < std::max(la.size(), lb.size()); ++i) {
    if (i < la.size())
      for (auto& g : la[i]) out.add(g);
    if (i < lb.size())
      for (auto& g : lb[i]) out.add(g);
  }
  return out;
}

Gf2Matrix circuit_matrix(const Circuit& c) {
  Gf2Matrix m = Gf2Matrix::identity(c.qubits());
  for (const Gate& g : c.gates()) {
    switch (g.kind) {
      case GateKind::Cnot:
        m.add_row(g.qubits[0], g.qubits[1]);
        break;
      case GateKind::Swap:
        m.swap_rows(g.qubits[0], g.qubits[1]);
        break;
      default:
        throw InvalidInput("circuit_matrix: unsupported gate kind");
    }
  }
  return m;
}

std::string_view verify_status_name(VerifyStatus s) {
  switch (s) {
    case VerifyStatus::Ok: return "ok";
    case VerifyStatus::OffGraph: return "off-graph";
    case VerifyStatus::WrongFunction: return "wrong-function";
    case VerifyStatus::UnsupportedGate: return "unsupported-gate";
    case VerifyStatus::BadQubit: return "bad-qubit";
  }
  return "?";
}

VerifyResult verify(const Circuit& c, const CouplingGraph& g, const Gf2Matrix& target) {
  if (target.size() != g.size() || c.qubits() != g.size()) {
    return {VerifyStatus::BadQubit, "circuit, graph and target sizes differ"};
  }
  for (std::size_t i = 0; i < c.gates().size(); ++i) {
    const Gate& gate = c.gates()[i];
    if (gate.kind != GateKind::Cnot && gate.kind != GateKind::Swap) {
      return {VerifyStatus::UnsupportedGate,
              "gate " + std::to_string(i) + " is " + std::string(gate_kind_name(gate.kind))};
    }
    if (!g.has_edge(gate.qubits[0], gate.qubits[1])) {
      return {VerifyStatus::OffGraph,
              "gate " + std::to_string(i) + " on (" + std::to_string(gate.qubits[0]) +
                  "," + std::to_string(gate.qubits[1]) + ") is not an edge"};
    }
  }
  if (circuit_matrix(c) != target) {
    return {VerifyStatus::WrongFunction, "accumulated matrix differs from target"};
  }
  return {};
}

VerifyResult verify(const Circuit& c, const CouplingGraph& g, const Permutation& target) {
  if (target.size() != g.size()) {
    return {VerifyStatus::BadQubit, "permutation size differs from graph"};
  }
  return verify(c, g, Gf2Matrix::from_permutation(target));
}

}  // namespace permsynth
