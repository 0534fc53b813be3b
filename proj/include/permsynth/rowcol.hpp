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
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "permsynth/exact.hpp"

namespace permsynth {

/// How the vertex elimination order is chosen.
struct OrderStrategy {
  enum class Kind { Fixed, Exhaustive, Sample };
  Kind kind = Kind::Exhaustive;
  std::vector<Vertex> order;  // Fixed
  unsigned samples = 5;       // Sample
  std::uint64_t seed = 0;     // Sample

  static OrderStrategy fixed(std::vector<Vertex> order) {
    return {Kind::Fixed, std::move(order), 0, 0};
  }
  static OrderStrategy exhaustive() { return {}; }
  static OrderStrategy sample(unsigned k, std::uint64_t seed) {
    return {Kind::Sample, {}, k, seed};
  }
};

/// `fixed:3,2,1`, `exhaustive`, or `sample:k[:seed]`.
OrderStrategy parse_order_strategy(std::string_view text);

/**
 * Memo table for exact size-optimal solves of residual matrices, keyed by
 * the residual graph and matrix. Thread-safe; share one across calls to
 * avoid re-solving recurring residuals.
 */
class ResidualCache {
 public:
  std::optional<Circuit> find(const CouplingGraph& g, const Gf2Matrix& m) const;
  void store(const CouplingGraph& g, const Gf2Matrix& m, const Circuit& c);
  std::size_t size() const;

 private:
  using Key = std::pair<std::vector<Edge>, std::vector<bool>>;
  static Key key_of(const CouplingGraph& g, const Gf2Matrix& m);
  mutable std::mutex mutex_;
  std::map<Key, Circuit> table_;
};

struct RowcolOptions {
  OrderStrategy strategy = OrderStrategy::exhaustive();
  /// Residual size at which elimination hands over to the exact solver;
  /// 1 disables the hand-over.
  unsigned hybrid_threshold = 4;
  ExactOptions exact;
  std::shared_ptr<ResidualCache> cache;
};

struct Elimination {
  /// Row operations in the order they were applied to the matrix.
  std::vector<std::pair<Vertex, Vertex>> ops;  // (control, target)
  Gf2Matrix matrix;                            // after the operations
};

/**
 * Applies on-graph row operations so that row and column `v` of `m` become
 * the unit vector e_v. `alive` lists the vertices not yet eliminated (it
 * must contain v, and v must be non-cut in the subgraph induced on it);
 * every operation stays inside that subgraph.
 */
Elimination eliminate_vertex(const Gf2Matrix& m, const CouplingGraph& g,
                             const std::vector<Vertex>& alive, Vertex v);

/**
 * ROWCOL synthesis: eliminate non-cut vertices until at most
 * `hybrid_threshold` remain, finish the residual with a CNOT-size-optimal
 * solve, and keep the best order by (size, depth, order).
 */
SynthesisResult rowcol_synth(const CouplingGraph& g, const Gf2Matrix& target,
                             const RowcolOptions& options = {});

/// Every valid elimination order prefix of length n - stop_at.
std::vector<std::vector<Vertex>> elimination_orders(const CouplingGraph& g, unsigned stop_at);

}  // namespace permsynth
