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

#include "permsynth/exact.hpp"

#include <chrono>

namespace permsynth {

unsigned measure(const Circuit& c, Objective objective) {
  return objective == Objective::Size ? static_cast<unsigned>(c.size()) : c.depth();
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <typename Encode>
SynthesisResult deepen(const CouplingGraph& g, bool is_identity, Primitive primitive,
                       Objective objective, const ExactOptions& options, Encode encode) {
  const auto t0 = Clock::now();
  SynthesisResult r;
  r.method = primitive == Primitive::Cnot ? "cnot-opt" : "swap-opt";
  r.objective = objective;
  r.circuit = Circuit(g.size());
  if (is_identity) {
    r.wall_seconds = seconds_since(t0);
    return r;
  }
  const bool limited = options.time_limit && *options.time_limit > 0;
  for (unsigned bound = 1; bound <= options.max_bound; ++bound) {
    SolveOptions so = options.solver;
    if (limited) {
      const double left = *options.time_limit - seconds_since(t0);
      if (left <= 0) {
        r.timed_out = true;
        break;
      }
      so.time_limit = so.time_limit ? std::min(*so.time_limit, left) : left;
    }
    Encoding enc = encode(bound);
    const auto q0 = Clock::now();
    SatResult sat = solve(enc.formula, so);
    r.queries.push_back({bound, sat.status, seconds_since(q0)});
    if (sat.status == SatStatus::Timeout) {
      r.timed_out = true;
      break;
    }
    if (sat.status == SatStatus::Unsat) {
      r.lower_bound = bound + 1;
      continue;
    }
    r.circuit = decode(sat.model, enc.vars);
    r.optimum = bound;
    r.lower_bound = bound;
    r.wall_seconds = seconds_since(t0);
    return r;
  }
  if (!r.timed_out) {
    throw std::runtime_error("exact synthesis exceeded the maximum bound of " +
                             std::to_string(options.max_bound));
  }
  r.note = "timed out; optimum >= " + std::to_string(r.lower_bound);
  r.wall_seconds = seconds_since(t0);
  return r;
}

}  // namespace

SynthesisResult exact_synth(const CouplingGraph& g, const Gf2Matrix& target, Primitive primitive,
                            Objective objective, const ExactOptions& options) {
  if (target.size() != g.size()) throw InvalidInput("target size differs from graph size");
  if (primitive == Primitive::Swap) {
    auto p = target.to_permutation();
    if (!p) throw InvalidInput("SWAP synthesis needs a permutation target");
    return exact_synth(g, *p, primitive, objective, options);
  }
  if (!target.is_invertible()) throw InvalidInput("target matrix is not invertible");
  return deepen(g, target.is_identity(), primitive, objective, options, [&](unsigned bound) {
    return encode_cnot(g, target, bound, objective, options.encode);
  });
}

SynthesisResult exact_synth(const CouplingGraph& g, const Permutation& target,
                            Primitive primitive, Objective objective,
                            const ExactOptions& options) {
  if (target.size() != g.size()) throw InvalidInput("permutation size differs from graph size");
  if (primitive == Primitive::Cnot) {
    return exact_synth(g, Gf2Matrix::from_permutation(target), primitive, objective, options);
  }
  return deepen(g, target.is_identity(), primitive, objective, options, [&](unsigned bound) {
    return encode_swap(g, target, bound, objective, options.encode);
  });
}

}  // namespace permsynth
