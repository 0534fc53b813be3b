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

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "permsynth/synth.hpp"

namespace permsynth {

/**
 * Random layered circuit: every layer pairs the qubits uniformly at random
 * (one idle qubit when n is odd) and puts an opaque two-qubit unitary with
 * a fresh id on every pair.
 */
Circuit generate_qv(unsigned n, unsigned layers, std::uint64_t seed);

/**
 * Makes every unitary act on an edge of `g` by inserting SWAPs. Layout is
 * trivial (logical i starts on physical i); for each gate the first
 * operand walks a shortest path towards the second, ties between next hops
 * broken by `seed`.
 */
Circuit route(const Circuit& logical, const CouplingGraph& g, std::uint64_t seed);

struct AbsorbStats {
  unsigned absorbed = 0;
  unsigned passes = 0;
};

/// Folds SWAPs adjacent to a unitary on the same pair into it (toggling
/// `mirrored`), repeated until nothing changes.
Circuit absorb_swaps(const Circuit& c, AbsorbStats* stats = nullptr);

/**
 * Grows bags of SWAPs greedily (a SWAP joins the oldest bag none of whose
 * qubits it shares with an intervening gate) and replaces each bag by one
 * PermBlock at the position of its first SWAP. The block's vertex set is
 * the bag's qubits plus the Steiner points that connect them in `g`.
 */
Circuit collapse_swap_blocks(const Circuit& c, const CouplingGraph& g);

/// Replaces each PermBlock by its recorded SWAP network.
Circuit expand_blocks(const Circuit& c);

struct Metrics {
  std::size_t size = 0;
  unsigned depth = 0;
};

struct BlockRecord {
  unsigned id = 0;
  std::vector<Vertex> qubits;
  Metrics original;
  std::optional<Metrics> synthesized;
  bool accepted = false;
  bool timed_out = false;
  double synth_ms = 0.0;
  /// Global depth with only this block replaced, minus the depth before
  /// resynthesis. Set for accepted blocks.
  std::optional<int> global_depth_delta;
};

struct CompilationReport {
  Objective objective = Objective::Size;
  std::string method;
  Metrics before;
  Metrics after;
  std::vector<BlockRecord> blocks;
};

/**
 * `candidate` beats `incumbent` when it is strictly better on the primary
 * objective, or equal there and strictly better on the other one.
 */
bool improves(const Metrics& candidate, const Metrics& incumbent, Objective objective);

struct ResynthOptions {
  MethodOptions method;
  /// Per-block budget for every method (seconds).
  std::optional<double> block_time_limit = 10.0;
  unsigned workers = 1;
};

/**
 * Synthesises every PermBlock with `method` on its induced subgraph and
 * keeps the result if it improves the block's SWAP network. All metrics
 * count SWAP as three CNOTs and a unitary as one gate.
 */
std::pair<Circuit, CompilationReport> resynthesize(const Circuit& c, const CouplingGraph& g,
                                                   Method method, Objective objective,
                                                   const ResynthOptions& options = {});

/// Metrics of a flattened circuit (SWAP = 3 CNOTs, unitary = 1).
Metrics global_metrics(const Circuit& c);

/**
 * Symbolic execution over logical qubits: each physical row holds a GF(2)
 * combination of logical qubits. Records which logical pair every unitary
 * meets; fails if a unitary meets a superposed row.
 */
struct Replay {
  bool ok = true;
  std::string error;
  std::vector<std::pair<unsigned, std::pair<unsigned, unsigned>>> meetings;
  Gf2Matrix state;
};

Replay replay(const Circuit& c);

/// True when both circuits make the same unitaries meet the same logical
/// pairs in order and end in the same placement.
bool same_action(const Circuit& a, const Circuit& b);

struct PipelineOptions {
  unsigned qubits = 8;
  unsigned layers = 8;
  std::uint64_t seed = 0;
  Method method = Method::LrSynthHybrid;
  Objective objective = Objective::Depth;
  ResynthOptions resynth;
};

struct PipelineResult {
  Circuit routed;
  Circuit absorbed;
  Circuit blocked;
  Circuit final_circuit;
  CompilationReport report;
};

/// generate_qv -> route -> absorb_swaps -> collapse_swap_blocks -> resynthesize.
PipelineResult compile_pipeline(const CouplingGraph& g, const PipelineOptions& options);

nlohmann::ordered_json report_to_json(const CompilationReport& r);

}  // namespace permsynth
