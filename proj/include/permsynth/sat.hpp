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
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "permsynth/cnf.hpp"

namespace permsynth {

enum class SatStatus { Sat, Unsat, Timeout };

std::string_view sat_status_name(SatStatus s);

struct SatStats {
  std::uint64_t conflicts = 0;
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t restarts = 0;
  double seconds = 0.0;
};

struct SatResult {
  SatStatus status = SatStatus::Unsat;
  /// model[v] for v in 1..num_vars; empty unless Sat.
  std::vector<bool> model;
  SatStats stats;
};

/// Raised when an external solver is missing or produces unusable output.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * Conflict-driven clause learning solver: two watched literals, VSIDS
 * branching with phase saving, first-UIP learning with clause
 * minimisation, Luby restarts and LBD-based clause database reduction.
 *
 * Single-threaded; one instance per query.
 */
class CdclSolver {
 public:
  explicit CdclSolver(const CnfFormula& formula, std::uint64_t seed = 0);
  ~CdclSolver();
  CdclSolver(const CdclSolver&) = delete;
  CdclSolver& operator=(const CdclSolver&) = delete;

  /// Time limit in seconds; nullopt or <= 0 means unlimited.
  SatResult solve(std::optional<double> time_limit = std::nullopt);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

enum class SatBackend { Embedded, External };

struct SolveOptions {
  SatBackend backend = SatBackend::Embedded;
  std::optional<double> time_limit;
  std::uint64_t seed = 0;
  /// External solver binary; falls back to $PERMSYNTH_SAT_SOLVER.
  std::string external_solver;
  /// Re-evaluate every returned model against the formula.
  bool check_model = true;
};

/// Name of the environment variable consulted for the external solver.
inline constexpr const char* kExternalSolverEnv = "PERMSYNTH_SAT_SOLVER";

SatResult solve(const CnfFormula& formula, const SolveOptions& options = {});

/**
 * Parses SAT-competition solver output (`s ...` and `v ...` lines).
 * Throws SolverError when no status line is present.
 */
SatResult parse_competition_output(std::string_view text, int num_vars);

}  // namespace permsynth
