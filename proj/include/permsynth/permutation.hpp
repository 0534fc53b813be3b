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
#include <string>
#include <string_view>
#include <vector>

#include "permsynth/graph.hpp"

namespace permsynth {

/**
 * Bijection on 0..n-1. dest(v) is the vertex where the token that starts on
 * vertex v has to end up.
 */
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<Vertex> dest);

  static Permutation identity(unsigned n);
  static Permutation reversal(unsigned n);
  static Permutation random(unsigned n, std::uint64_t seed);
  /// Parses `d0,d1,...`.
  static Permutation parse(std::string_view csv);

  unsigned size() const { return static_cast<unsigned>(dest_.size()); }
  Vertex dest(Vertex v) const { return dest_[v]; }
  Vertex operator[](Vertex v) const { return dest_[v]; }
  const std::vector<Vertex>& table() const { return dest_; }

  Permutation inverse() const;
  /// Token movement of `first` followed by `second`.
  static Permutation then(const Permutation& first, const Permutation& second);
  bool is_identity() const;
  /// Number of pairs (i < j) with dest(i) > dest(j).
  unsigned inversions() const;

  std::string to_csv() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    return a.dest_ <=> b.dest_;
  }

 private:
  std::vector<Vertex> dest_;
};

/// Permutation realised by a sequence of transpositions, applied in order.
Permutation permutation_of_swaps(unsigned n,
                                 const std::vector<std::pair<Vertex, Vertex>>& swaps);

/// Lexicographically next permutation of the dest table; false after the last.
bool next_permutation(Permutation& p);

}  // namespace permsynth
