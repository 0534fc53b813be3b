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

#include "permsynth/circuit.hpp"
#include "permsynth/encoding.hpp"

namespace permsynth {

/**
 * Odd-even transposition sort along a path graph: alternating layers of
 * adjacent compare-swaps, stopping once sorted (at most n layers).
 * Throws InvalidInput if `g` is not a path.
 */
Circuit odd_even_sort(const CouplingGraph& g, const Permutation& p);

/**
 * Token swapping by peeling: repeatedly pick the smallest non-cut vertex of
 * the remaining graph, walk the token destined for it there along a
 * shortest path, and delete the vertex. Works on any connected graph.
 */
Circuit peel_tokens(const CouplingGraph& g, const Permutation& p);

/// State-space limits of the exhaustive oracle.
inline constexpr unsigned kOracleMaxCnotQubits = 4;
inline constexpr unsigned kOracleMaxSwapQubits = 6;

/**
 * Exact optimum by breadth-first search from the identity over on-graph
 * gates (size) or over non-empty sets of qubit-disjoint gates (depth).
 * Refuses graphs above the state-space limits with InvalidInput.
 */
unsigned bfs_oracle(const CouplingGraph& g, const Gf2Matrix& target, Primitive primitive,
                    Objective objective);
unsigned bfs_oracle(const CouplingGraph& g, const Permutation& target, Primitive primitive,
                    Objective objective);

}  // namespace permsynth
