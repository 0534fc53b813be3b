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

#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace permsynth {

/// DIMACS-style literal: +v or -v for variable v >= 1.
using Lit = int;

/**
 * CNF formula with flat clause storage. Variables are dense and 1-based.
 */
class CnfFormula {
 public:
  int new_var() { return ++num_vars_; }
  int new_vars(int count);
  int num_vars() const { return num_vars_; }
  std::size_t num_clauses() const { return offsets_.size(); }

  void add_clause(std::span<const Lit> lits);
  void add_clause(std::initializer_list<Lit> lits) {
    add_clause(std::span<const Lit>(lits.begin(), lits.size()));
  }

  std::span<const Lit> clause(std::size_t i) const;

  void at_least_one(std::span<const Lit> lits) { add_clause(lits); }
  /// Pairwise encoding.
  void at_most_one(std::span<const Lit> lits);
  void exactly_one(std::span<const Lit> lits);
  /// Clauses for out <-> (a XOR b).
  void xor_equals(Lit out, Lit a, Lit b);

  /// model[v] is the value of variable v (index 0 unused).
  bool satisfied_by(const std::vector<bool>& model) const;
  /// Index of the first falsified clause, or num_clauses() if none.
  std::size_t first_falsified(const std::vector<bool>& model) const;

  void write_dimacs(std::ostream& out) const;
  std::string to_dimacs() const;
  static CnfFormula parse_dimacs(std::istream& in);

 private:
  int num_vars_ = 0;
  std::vector<Lit> lits_;
  std::vector<std::size_t> offsets_;
};

}  // namespace permsynth
