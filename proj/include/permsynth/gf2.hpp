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
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "permsynth/permutation.hpp"

namespace permsynth {

/**
 * Square matrix over GF(2) with bit-packed rows.
 *
 * A CNOT(c, t) acts by adding row c into row t. A circuit's matrix is the
 * result of applying its gates, in order, to the identity.
 */
class Gf2Matrix {
 public:
  Gf2Matrix() = default;
  explicit Gf2Matrix(unsigned n);

  static Gf2Matrix identity(unsigned n);
  static Gf2Matrix from_rows(const std::vector<std::vector<int>>& rows);
  /// M[dest(v)][v] = 1: column v maps e_v to e_dest(v).
  static Gf2Matrix from_permutation(const Permutation& p);
  /// Uniformly random invertible matrix (rejection sampling).
  static Gf2Matrix random_invertible(unsigned n, std::mt19937_64& rng);

  unsigned size() const { return n_; }
  bool get(unsigned row, unsigned col) const {
    return (bits_[row * words_ + col / 64] >> (col % 64)) & 1u;
  }
  void set(unsigned row, unsigned col, bool value);

  /// row[target] ^= row[control]
  void add_row(unsigned control, unsigned target);
  void swap_rows(unsigned a, unsigned b);
  bool row_is_unit(unsigned row, unsigned col) const;
  bool row_is_zero(unsigned row) const;

  unsigned rank() const;
  bool is_invertible() const { return rank() == n_; }
  bool is_identity() const;
  bool is_permutation_matrix() const;
  /// Partial inverse of from_permutation.
  std::optional<Permutation> to_permutation() const;
  /// Throws InvalidInput when singular.
  Gf2Matrix inverse() const;
  Gf2Matrix transpose() const;
  /// Submatrix on the given rows/columns (same index list for both).
  Gf2Matrix restrict(const std::vector<unsigned>& indices) const;

  /// Dense 64-bit key; only valid for n <= 8.
  std::uint64_t key() const;

  std::string to_string() const;

  friend bool operator==(const Gf2Matrix&, const Gf2Matrix&) = default;

 private:
  unsigned n_ = 0;
  unsigned words_ = 0;
  std::vector<std::uint64_t> bits_;

  friend Gf2Matrix multiply(const Gf2Matrix& a, const Gf2Matrix& b);
};

/// Returns a copy with row t replaced by row t XOR row c.
Gf2Matrix apply_cnot(const Gf2Matrix& m, unsigned control, unsigned target);

/// Boolean matrix product over GF(2).
Gf2Matrix multiply(const Gf2Matrix& a, const Gf2Matrix& b);

/**
 * Solves x^T A = b over GF(2) (x selects rows of A summing to b).
 * Returns nullopt when b is outside the row space.
 */
std::optional<std::vector<bool>> solve_row_combination(const Gf2Matrix& a,
                                                       const std::vector<bool>& b);

}  // namespace permsynth
