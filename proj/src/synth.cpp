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

#include "permsynth/synth.hpp"

#include <array>
#include <chrono>
#include <stdexcept>
#include <string>

#include "permsynth/baselines.hpp"

namespace permsynth {

namespace {
constexpr std::array<std::pair<Method, std::string_view>, 7> kNames{{
    {Method::CnotOpt, "cnot-opt"},
    {Method::SwapOpt, "swap-opt"},
    {Method::Rowcol, "rowcol"},
    {Method::RowcolHybrid, "rowcol-hybrid"},
    {Method::LrSynth, "lr-synth"},
    {Method::LrSynthHybrid, "lr-synth-hybrid"},
    {Method::OddEven, "odd-even"},
}};
}  // namespace

std::string_view method_name(Method m) {
  for (auto [k, name] : kNames) {
    if (k == m) return name;
  }
  return "?";
}

Method parse_method(std::string_view s) {
  for (auto [k, name] : kNames) {
    if (name == s) return k;
  }
  throw InvalidInput("unknown method '" + std::string(s) + "'");
}

Primitive method_primitive(Method m) {
  switch (m) {
    case Method::CnotOpt:
    case Method::Rowcol:
    case Method::RowcolHybrid:
      return Primitive::Cnot;
    default:
      return Primitive::Swap;
  }
}

SynthesisResult synthesize(Method method, const CouplingGraph& g, const Permutation& target,
                           Objective objective, const MethodOptions& options) {
  switch (method) {
    case Method::CnotOpt:
    case Method::SwapOpt:
      return exact_synth(g, target, method_primitive(method), objective, options.exact);
    case Method::Rowcol:
    case Method::RowcolHybrid: {
      RowcolOptions ro;
      ro.strategy = options.order;
      ro.hybrid_threshold = method == Method::Rowcol ? 1 : options.rowcol_hybrid_threshold;
      ro.exact = options.exact;
      ro.cache = options.cache;
      return rowcol_synth(g, Gf2Matrix::from_permutation(target), ro);
    }
    case Method::LrSynth:
    case Method::LrSynthHybrid: {
      LrOptions lo;
      lo.samples = options.samples;
      lo.hybrid_threshold = method == Method::LrSynth ? 1 : options.lr_hybrid_threshold;
      lo.exact = options.exact;
      return lr_synth(g, target, lo);
    }
    case Method::OddEven: {
      const auto t0 = std::chrono::steady_clock::now();
      SynthesisResult r;
      r.method = "odd-even";
      r.objective = Objective::Depth;
      r.circuit = odd_even_sort(g, target);
      r.optimum = r.circuit.depth();
      r.wall_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      return r;
    }
  }
  throw std::logic_error("unhandled method");
}

}  // namespace permsynth
