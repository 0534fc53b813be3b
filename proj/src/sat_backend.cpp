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

#include <unistd.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "permsynth/sat.hpp"

namespace permsynth {

namespace {

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

SatResult solve_external(const CnfFormula& formula, const SolveOptions& options) {
  std::string solver = options.external_solver;
  if (solver.empty()) {
    if (const char* env = std::getenv(kExternalSolverEnv)) solver = env;
  }
  if (solver.empty()) {
    throw SolverError(std::string("external backend requested but no solver configured (set ") +
                      kExternalSolverEnv + ")");
  }
  if (!std::filesystem::exists(solver)) {
    throw SolverError("external solver '" + solver + "' not found");
  }

  const auto start = std::chrono::steady_clock::now();
  auto path = std::filesystem::temp_directory_path() /
              ("permsynth-" + std::to_string(::getpid()) + "-" +
               std::to_string(reinterpret_cast<std::uintptr_t>(&formula)) + "-" +
               std::to_string(start.time_since_epoch().count()) + ".cnf");
  {
    std::ofstream out(path);
    formula.write_dimacs(out);
  }
  std::string cmd;
  const bool limited = options.time_limit && *options.time_limit > 0;
  if (limited) {
    cmd = "timeout -s KILL " +
          std::to_string(static_cast<long>(std::ceil(*options.time_limit))) + " ";
  }
  cmd += shell_quote(solver) + " " + shell_quote(path.string()) + " 2>/dev/null";

  std::string output;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) {
    std::filesystem::remove(path);
    throw SolverError("failed to launch external solver");
  }
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) output.append(buf.data(), got);
  ::pclose(pipe);
  std::filesystem::remove(path);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  try {
    SatResult r = parse_competition_output(output, formula.num_vars());
    r.stats.seconds = elapsed;
    return r;
  } catch (const SolverError&) {
    if (limited && elapsed >= *options.time_limit) {
      SatResult r;
      r.status = SatStatus::Timeout;
      r.stats.seconds = elapsed;
      return r;
    }
    throw;
  }
}

}  // namespace

SatResult parse_competition_output(std::string_view text, int num_vars) {
  SatResult r;
  bool have_status = false;
  std::vector<bool> model(static_cast<std::size_t>(num_vars) + 1, false);
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("s ", 0) == 0) {
      if (line.find("UNSATISFIABLE") != std::string::npos) {
        r.status = SatStatus::Unsat;
      } else if (line.find("SATISFIABLE") != std::string::npos) {
        r.status = SatStatus::Sat;
      } else if (line.find("UNKNOWN") != std::string::npos) {
        r.status = SatStatus::Timeout;
      } else {
        throw SolverError("unrecognised status line: " + line);
      }
      have_status = true;
    } else if (line.rfind("v ", 0) == 0) {
      std::istringstream ls(line.substr(2));
      long lit = 0;
      while (ls >> lit) {
        if (lit == 0) continue;
        const long v = std::labs(lit);
        if (v > num_vars) throw SolverError("model literal out of range");
        model[static_cast<std::size_t>(v)] = lit > 0;
      }
    }
  }
  if (!have_status) throw SolverError("solver output has no status line");
  if (r.status == SatStatus::Sat) r.model = std::move(model);
  return r;
}

SatResult solve(const CnfFormula& formula, const SolveOptions& options) {
  SatResult r;
  if (options.backend == SatBackend::External) {
    r = solve_external(formula, options);
  } else {
    CdclSolver solver(formula, options.seed);
    r = solver.solve(options.time_limit);
  }
  if (r.status == SatStatus::Sat && options.check_model) {
    const std::size_t bad = formula.first_falsified(r.model);
    if (bad != formula.num_clauses()) {
      throw SolverError("model violates clause " + std::to_string(bad));
    }
  }
  return r;
}

}  // namespace permsynth
