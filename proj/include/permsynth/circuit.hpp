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

#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "permsynth/gf2.hpp"
#include "permsynth/graph.hpp"
#include "permsynth/permutation.hpp"

namespace permsynth {

enum class GateKind { Cnot, Swap, Unitary, PermBlock };

std::string_view gate_kind_name(GateKind k);

/**
 * One gate. CNOT qubits are (control, target). A PermBlock carries the
 * token movement over its vertex set as `block_dest` (block_dest[i] is the
 * vertex where the token on qubits[i] ends) and the SWAP network it was
 * collapsed from.
 */
struct Gate {
  GateKind kind = GateKind::Cnot;
  std::vector<Vertex> qubits;
  unsigned unitary_id = 0;
  bool mirrored = false;
  std::vector<Vertex> block_dest;
  std::vector<std::pair<Vertex, Vertex>> block_swaps;

  static Gate cnot(Vertex control, Vertex target);
  static Gate swap(Vertex a, Vertex b);
  static Gate unitary(Vertex a, Vertex b, unsigned id, bool mirrored = false);
  static Gate perm_block(std::vector<Vertex> qubits, std::vector<Vertex> dest,
                         std::vector<std::pair<Vertex, Vertex>> swaps);

  bool touches(Vertex v) const;
  friend bool operator==(const Gate&, const Gate&) = default;
};

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(unsigned n) : n_(n) {}
  Circuit(unsigned n, std::vector<Gate> gates);

  unsigned qubits() const { return n_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }

  void add(Gate g);
  void add_cnot(Vertex control, Vertex target) { add(Gate::cnot(control, target)); }
  void add_swap(Vertex a, Vertex b) { add(Gate::swap(a, b)); }
  void append(const Circuit& other);

  /// Number of ASAP layers.
  unsigned depth() const;
  /// ASAP layer index of every gate.
  std::vector<unsigned> layer_of_gates() const;
  /// Gates grouped by ASAP layer.
  std::vector<std::vector<Gate>> layers() const;

  std::size_t count(GateKind k) const;
  bool only(std::initializer_list<GateKind> kinds) const;

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  unsigned n_ = 0;
  std::vector<Gate> gates_;
};

/// SWAP(a,b) -> CNOT(a,b) CNOT(b,a) CNOT(a,b); CNOTs pass through.
Circuit to_cnots(const Circuit& c);

struct CnotMetrics {
  std::size_t size = 0;
  unsigned depth = 0;
};
/// Size/depth after expanding SWAPs to CNOTs (other gates count as one).
CnotMetrics cnot_equivalent(const Circuit& c);

Circuit compose(const Circuit& a, const Circuit& b);
/// Relabels qubit q to embedding[q]; the result has `n` qubits.
Circuit remap(const Circuit& c, const std::vector<Vertex>& embedding, unsigned n);
/// Interleaves two circuits layer by layer (used for disjoint halves).
Circuit merge_parallel(const Circuit& a, const Circuit& b);

/// Matrix obtained by applying the CNOT/SWAP gates, in order, to the identity.
Gf2Matrix circuit_matrix(const Circuit& c);

enum class VerifyStatus { Ok, OffGraph, WrongFunction, UnsupportedGate, BadQubit };

std::string_view verify_status_name(VerifyStatus s);

struct VerifyResult {
  VerifyStatus status = VerifyStatus::Ok;
  std::string detail;
  explicit operator bool() const { return status == VerifyStatus::Ok; }
};

/**
 * Ground-truth check: every gate lies on an edge of `g` and the accumulated
 * matrix equals `target`.
 */
VerifyResult verify(const Circuit& c, const CouplingGraph& g, const Gf2Matrix& target);
VerifyResult verify(const Circuit& c, const CouplingGraph& g, const Permutation& target);

}  // namespace permsynth
