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

#include <optional>
#include <utility>
#include <vector>

#include "permsynth/exact.hpp"

namespace permsynth {

/**
 * Lane choice for every token that must cross a partition. Lanes are the
 * partition's removed edges, by index.
 */
struct PathAssignment {
  /// lane[token], or -1 for tokens already on their side.
  std::vector<int> lane;
  /// Tokens routed through each lane (both directions).
  std::vector<unsigned> load;
};

/**
 * Tokens sit on vertices: `at[v]` is the token on v, and token t must end
 * on `target.dest(t)`. Each token crossing left-to-right, nearest the cut
 * first, takes the lane minimising
 *   max(dist_left(t, l), dist_right(w, r)) + load / 2
 * where w is the nearest unassigned right-to-left token; w is paired onto
 * the same lane.
 */
PathAssignment assign_paths(const CouplingGraph& g, const Partition& part,
                            const std::vector<Vertex>& at, const Permutation& target);

struct RoutingOutcome {
  /// Vertex-disjoint SWAP layers, in order.
  std::vector<std::vector<std::pair<Vertex, Vertex>>> rounds;
  /// Token on each vertex after the last round.
  std::vector<Vertex> at;
  /// Loop iterations used, including rounds that applied nothing.
  unsigned iterations = 0;
  bool capped = false;
  /// Tokens not on their destination after crossing.
  unsigned misplaced = 0;
};

/**
 * Swap rounds that bring every token to the correct side of `part`, from
 * the identity placement. Gives up after `cap` iterations.
 */
RoutingOutcome routing_rounds(const CouplingGraph& g, const Partition& part,
                              const Permutation& target, unsigned cap,
                              bool add_to_matching = true);

struct LrOptions {
  /// Partitions tried per call; unset means every partition for graphs of
  /// at most 16 vertices and a single one above.
  std::optional<unsigned> samples;
  /// Sides with at most this many vertices are solved SWAP-depth-optimally;
  /// 1 disables the exact solver.
  unsigned hybrid_threshold = 1;
  /// Options for the exact solves (set a time limit for large thresholds).
  ExactOptions exact;
  /// Iteration cap per split is cap_factor * n.
  unsigned cap_factor = 4;
  /// Extra sorting swaps on path and ring subgraphs.
  bool add_to_matching = true;
};

inline constexpr unsigned kDefaultLrHybridThreshold = 8;

/**
 * Depth-oriented divide-and-conquer SWAP routing: split the graph, move
 * every token to its side, recurse into both sides in parallel.
 */
SynthesisResult lr_synth(const CouplingGraph& g, const Permutation& target,
                         const LrOptions& options = {});

}  // namespace permsynth
