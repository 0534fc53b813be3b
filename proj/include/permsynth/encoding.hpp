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

#include <stdexcept>
#include <string_view>
#include <vector>

#include "permsynth/circuit.hpp"
#include "permsynth/cnf.hpp"
#include "permsynth/gf2.hpp"
#include "permsynth/graph.hpp"

namespace permsynth {

enum class Objective { Size, Depth };
/// Primitive used by a synthesiser.
enum class Primitive { Cnot, Swap };

std::string_view objective_name(Objective o);
std::string_view primitive_name(Primitive p);
Objective parse_objective(std::string_view s);

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * Variable layout of a layered encoding with `bound` layers.
 *
 * State variables describe the matrix after d layers (d = 0..bound): entry
 * (i, k) for CNOT encodings, "token k sits on vertex i" for SWAP encodings;
 * both are the same permutation-matrix entry. Gate variables exist per
 * layer per edge, and per direction for CNOTs.
 */
struct VarMap {
  Primitive primitive = Primitive::Cnot;
  Objective objective = Objective::Depth;
  unsigned n = 0;
  unsigned bound = 0;
  std::vector<Edge> edges;
  int state_base = 1;
  int gate_base = 1;
  /// Highest id used by state and gate variables; larger ids are auxiliary.
  int last_var = 0;

  int state_var(unsigned d, unsigned i, unsigned k) const {
    return state_base + static_cast<int>((d * n + i) * n + k);
  }
  /// CNOT gate variable for edge index e; dir 0 is a->b, 1 is b->a.
  int cnot_var(unsigned d, unsigned e, unsigned dir) const {
    return gate_base + static_cast<int>((d * edges.size() + e) * 2 + dir);
  }
  int swap_var(unsigned d, unsigned e) const {
    return gate_base + static_cast<int>(d * edges.size() + e);
  }
  /// Gate variable for CNOT(control -> target) at layer d; 0 if not an edge.
  int cnot_var_for(unsigned d, Vertex control, Vertex target) const;
};

struct Encoding {
  CnfFormula formula;
  VarMap vars;
};

struct EncodeOptions {
  /// Adds implied unit clauses from light-cone distance bounds.
  bool reachability_pruning = true;
  /// Restricts models to a canonical form (ASAP layering for depth, sorted
  /// commuting neighbours for size, no back-to-back repeated gate). Keeps
  /// the minimal satisfiable bound unchanged.
  bool symmetry_breaking = true;
  int max_vars = 4'000'000;
};

/**
 * Satisfiable iff a CNOT circuit on `g` with at most `bound` layers
 * (Depth) or exactly `bound` gates (Size) maps the identity to `target`.
 */
Encoding encode_cnot(const CouplingGraph& g, const Gf2Matrix& target, unsigned bound,
                     Objective objective, const EncodeOptions& options = {});

/// Same schema with SWAP gates and a permutation target.
Encoding encode_swap(const CouplingGraph& g, const Permutation& target, unsigned bound,
                     Objective objective, const EncodeOptions& options = {});

/**
 * Builds the circuit selected by a model: layers in order, gates within a
 * layer ordered by (min qubit, max qubit). Throws std::logic_error if two
 * gates share a qubit in one layer.
 */
Circuit decode(const std::vector<bool>& model, const VarMap& vars);

}  // namespace permsynth
