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

#include "permsynth/circuit_json.hpp"

namespace permsynth {

nlohmann::ordered_json circuit_to_json(const Circuit& c) {
  nlohmann::ordered_json j;
  j["n"] = c.qubits();
  j["gates"] = nlohmann::ordered_json::array();
  for (const Gate& g : c.gates()) {
    nlohmann::ordered_json gj;
    gj["kind"] = std::string(gate_kind_name(g.kind));
    gj["qubits"] = g.qubits;
    if (g.kind == GateKind::Unitary) {
      gj["id"] = g.unitary_id;
      gj["mirrored"] = g.mirrored;
    } else if (g.kind == GateKind::PermBlock) {
      gj["dest"] = g.block_dest;
      auto swaps = nlohmann::ordered_json::array();
      for (auto [a, b] : g.block_swaps) swaps.push_back({a, b});
      gj["swaps"] = swaps;
    }
    j["gates"].push_back(std::move(gj));
  }
  return j;
}

Circuit circuit_from_json(const nlohmann::json& j) {
  try {
    Circuit c(j.at("n").get<unsigned>());
    for (const auto& gj : j.at("gates")) {
      const auto kind = gj.at("kind").get<std::string>();
      const auto qubits = gj.at("qubits").get<std::vector<Vertex>>();
      auto need_two = [&] {
        if (qubits.size() != 2) throw InvalidInput(kind + " gate needs exactly two qubits");
      };
      if (kind == "cnot") {
        need_two();
        c.add(Gate::cnot(qubits[0], qubits[1]));
      } else if (kind == "swap") {
        need_two();
        c.add(Gate::swap(qubits[0], qubits[1]));
      } else if (kind == "u2") {
        need_two();
        c.add(Gate::unitary(qubits[0], qubits[1], gj.value("id", 0u),
                            gj.value("mirrored", false)));
      } else if (kind == "perm") {
        std::vector<std::pair<Vertex, Vertex>> swaps;
        if (gj.contains("swaps")) {
          for (const auto& s : gj.at("swaps")) {
            swaps.emplace_back(s.at(0).get<Vertex>(), s.at(1).get<Vertex>());
          }
        }
        c.add(Gate::perm_block(qubits, gj.at("dest").get<std::vector<Vertex>>(),
                               std::move(swaps)));
      } else {
        throw InvalidInput("unknown gate kind '" + kind + "'");
      }
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed circuit JSON: ") + e.what());
  }
}

}  // namespace permsynth
