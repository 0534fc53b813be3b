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
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "permsynth/circuit.hpp"
#include "permsynth/encoding.hpp"
#include "permsynth/sat.hpp"

namespace permsynth {

/// One satisfiability query of the deepening loop.
struct Query {
  unsigned bound = 0;
  SatStatus status = SatStatus::Unsat;
  double seconds = 0.0;
};

/// Output of every synthesiser in the library.
struct SynthesisResult {
  Circuit circuit;
  std::string method;
  Objective objective = Objective::Depth;
  /// Exact optimum for exact methods; measured objective for heuristics.
  unsigned optimum = 0;
  std::vector<Query> queries;
  double wall_seconds = 0.0;
  /// The time limit expired; `lower_bound` is the best refuted bound + 1.
  bool timed_out = false;
  unsigned lower_bound = 0;
  /// A fallback path was taken (e.g. a residual solve timed out).
  bool fallback = false;
  std::string note;
};

struct ExactOptions {
  SolveOptions solver;
  /// Wall-clock budget for the whole deepening loop, in seconds.
  std::optional<double> time_limit;
  EncodeOptions encode;
  /// Hard stop for the deepening loop.
  unsigned max_bound = 256;
};

/**
 * Iterative deepening: bound 0, 1, 2, ... until the encoding is
 * satisfiable. The identity returns immediately without a solver call.
 * A SWAP synthesis needs a permutation-matrix target.
 */
SynthesisResult exact_synth(const CouplingGraph& g, const Gf2Matrix& target, Primitive primitive,
                            Objective objective, const ExactOptions& options = {});
SynthesisResult exact_synth(const CouplingGraph& g, const Permutation& target,
                            Primitive primitive, Objective objective,
                            const ExactOptions& options = {});

/// Value of `objective` measured on a circuit.
unsigned measure(const Circuit& c, Objective objective);

struct SweepRow {
  Permutation perm;
  std::optional<unsigned> optimum;  // empty on timeout
  std::size_t queries = 0;
  double wall_ms = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::map<unsigned, std::size_t> histogram;
  std::size_t timeouts = 0;
  /// Lexicographically smallest permutation attaining the maximum optimum.
  std::optional<Permutation> witness;
  unsigned max_optimum = 0;
};

/// Either all n! permutations in lexicographic order or `count` random ones.
struct Sampler {
  bool all = true;
  std::size_t count = 0;
  std::uint64_t seed = 0;

  std::vector<Permutation> draw(unsigned n) const;
};

/**
 * Solves every sampled permutation exactly. Instances are distributed over
 * `workers` threads (0 = hardware concurrency); the result is independent
 * of the worker count.
 */
SweepResult sweep_all(const CouplingGraph& g, Primitive primitive, Objective objective,
                      const Sampler& sampler, const ExactOptions& options = {},
                      unsigned workers = 0);

/// CSV with header `perm,optimum,queries,wall_ms`; permutations quoted.
void write_sweep_csv(std::ostream& out, const SweepResult& r);

}  // namespace permsynth
