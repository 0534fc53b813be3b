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

#include "permsynth/permutation.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <random>

namespace permsynth {

Permutation::Permutation(std::vector<Vertex> dest) : dest_(std::move(dest)) {
  std::vector<char> hit(dest_.size(), 0);
  for (Vertex d : dest_) {
    if (d >= dest_.size() || hit[d]) {
      throw InvalidInput("permutation table is not a bijection");
    }
    hit[d] = 1;
  }
}

Permutation Permutation::identity(unsigned n) {
  std::vector<Vertex> d(n);
  std::iota(d.begin(), d.end(), 0u);
  return Permutation(std::move(d));
}

Permutation Permutation::reversal(unsigned n) {
  std::vector<Vertex> d(n);
  for (Vertex v = 0; v < n; ++v) d[v] = n - 1 - v;
  return Permutation(std::move(d));
}

Permutation Permutation::random(unsigned n, std::uint64_t seed) {
  std::vector<Vertex> d(n);
  std::iota(d.begin(), d.end(), 0u);
  std::mt19937_64 rng(seed);
  // Explicit Fisher-Yates so results do not depend on the std::shuffle
  // implementation.
  for (unsigned i = n; i > 1; --i) {
    std::uniform_int_distribution<unsigned> pick(0, i - 1);
    std::swap(d[i - 1], d[pick(rng)]);
  }
  return Permutation(std::move(d));
}

Permutation Permutation::parse(std::string_view csv) {
  std::vector<Vertex> d;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    auto comma = csv.find(',', pos);
    if (comma == std::string_view::npos) comma = csv.size();
    auto item = csv.substr(pos, comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    Vertex v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw InvalidInput("malformed permutation entry '" + std::string(item) + "'");
    }
    d.push_back(v);
    pos = comma + 1;
  }
  return Permutation(std::move(d));
}

Permutation Permutation::inverse() const {
  std::vector<Vertex> inv(dest_.size());
  for (Vertex v = 0; v < dest_.size(); ++v) inv[dest_[v]] = v;
  return Permutation(std::move(inv));
}

Permutation Permutation::then(const Permutation& first, const Permutation& second) {
  if (first.size() != second.size()) throw InvalidInput("permutation size mismatch");
  std::vector<Vertex> d(first.size());
  for (Vertex v = 0; v < d.size(); ++v) d[v] = second.dest(first.dest(v));
  return Permutation(std::move(d));
}

bool Permutation::is_identity() const {
  for (Vertex v = 0; v < dest_.size(); ++v)
    if (dest_[v] != v) return false;
  return true;
}

unsigned Permutation::inversions() const {
  unsigned count = 0;
  for (std::size_t i = 0; i < dest_.size(); ++i)
    for (std::size_t j = i + 1; j < dest_.size(); ++j)
      if (dest_[i] > dest_[j]) ++count;
  return count;
}

std::string Permutation::to_csv() const {
  std::string s;
  for (std::size_t i = 0; i < dest_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(dest_[i]);
  }
  return s;
}

Permutation permutation_of_swaps(unsigned n,
                                 const std::vector<std::pair<Vertex, Vertex>>& swaps) {
  // at[v] = token currently on v
  std::vector<Vertex> at(n);
  std::iota(at.begin(), at.end(), 0u);
  for (auto [a, b] : swaps) std::swap(at.at(a), at.at(b));
  std::vector<Vertex> dest(n);
  for (Vertex v = 0; v < n; ++v) dest[at[v]] = v;
  return Permutation(std::move(dest));
}

bool next_permutation(Permutation& p) {
  std::vector<Vertex> d = p.table();
  bool more = std::next_permutation(d.begin(), d.end());
  p = Permutation(std::move(d));
  return more;
}

}  // namespace permsynth
