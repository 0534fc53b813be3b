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

#include <memory>
#include <optional>
#include <string_view>

#include "permsynth/lrsynth.hpp"
#include "permsynth/rowcol.hpp"

namespace permsynth {

enum class Method { CnotOpt, SwapOpt, Rowcol, RowcolHybrid, LrSynth, LrSynthHybrid, OddEven };

std::string_view method_name(Method m);
Method parse_method(std::string_view s);
/// Gate family a method emits.
Primitive method_primitive(Method m);

struct MethodOptions {
  ExactOptions exact;
  OrderStrategy order = OrderStrategy::exhaustive();
  std::shared_ptr<ResidualCache> cache;
  std::optional<unsigned> samples;
  unsigned rowcol_hybrid_threshold = 4;
  unsigned lr_hybrid_threshold = kDefaultLrHybridThreshold;
};

/**
 * Runs one synthesiser. `objective` matters to the exact methods only; the
 * heuristics have a fixed objective (ROWCOL: size, LR-Synth/odd-even:
 * depth) which is reported in the result.
 */
SynthesisResult synthesize(Method method, const CouplingGraph& g, const Permutation& target,
                           Objective objective, const MethodOptions& options = {});

}  // namespace permsynth
