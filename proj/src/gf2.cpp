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

#include "permsynth/gf2.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace permsynth {

Gf2Matrix::Gf2Matrix(unsigned n)
    : n_(n), words_((n + 63) / 64), bits_(static_cast<std::size_t>(n) * ((n + 63) / 64), 0) {}

Gf2Matrix Gf2Matrix::identity(unsigned n) {
  Gf2Matrix m(n);
  for (unsigned i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

Gf2Matrix Gf2Matrix::from_rows(const std::vector<std::vector<int>>& rows) {
  const unsigned n = static_cast<unsigned>(rows.size());
  Gf2Matrix m(n);
  for (unsigned i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw InvalidInput("matrix must be square");
    for (unsigned j = 0; j < n; ++j) m.set(i, j, rows[i][j] != 0);
  }
  return m;
}

Gf2Matrix Gf2Matrix::from_permutation(const Permutation& p) {
  Gf2Matrix m(p.size());
  for (Vertex v = 0; v < p.size(); ++v) m.set(p.dest(v), v, true);
  return m;
}

Gf2Matrix Gf2Matrix::random_invertible(unsigned n, std::mt19937_64& rng) {
  Gf2Matrix m(n);
  std::bernoulli_distribution coin(0.5);
  do {
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j) m.set(i, j, coin(rng));
  } while (!m.is_invertible());
  return m;
}

void Gf2Matrix::set(unsigned row, unsigned col, bool value) {
  auto& w = bits_[row * words_ + col / 64];
  const std::uint64_t mask = std::uint64_t{1} << (col % 64);
  w = value ? (w | mask) : (w & ~mask);
}

void Gf2Matrix::add_row(unsigned control, unsigned target) {
  std::uint64_t* t = &bits_[target * words_];
  const std::uint64_t* c = &bits_[control * words_];
  for (unsigned w = 0; w < words_; ++w) t[w] ^= c[w];
}

void Gf2Matrix::swap_rows(unsigned a, unsigned b) {
  if (a == b) return;
  std::swap_ranges(bits_.begin() + a * words_, bits_.begin() + (a + 1) * words_,
                   bits_.begin() + b * words_);
}

bool Gf2Matrix::row_is_unit(unsigned row, unsigned col) const {
  for (unsigned w = 0; w < words_; ++w) {
    std::uint64_t expect = (col / 64 == w) ? (std::uint64_t{1} << (col % 64)) : 0;
    if (bits_[row * words_ + w] != expect) return false;
  }
  return true;
}

bool Gf2Matrix::row_is_zero(unsigned row) const {
  for (unsigned w = 0; w < words_; ++w)
    if (bits_[row * words_ + w]) return false;
  return true;
}

unsigned Gf2Matrix::rank() const {
  Gf2Matrix m = *this;
  unsigned rank = 0;
  for (unsigned col = 0; col < n_ && rank < n_; ++col) {
    unsigned pivot = rank;
    while (pivot < n_ && !m.get(pivot, col)) ++pivot;
    if (pivot == n_) continue;
    m.swap_rows(pivot, rank);
    for (unsigned r = 0; r < n_; ++r)
      if (r != rank && m.get(r, col)) m.add_row(rank, r);
    ++rank;
  }
  return rank;
}

bool Gf2Matrix::is_identity() const { return *this == identity(n_); }

bool Gf2Matrix::is_permutation_matrix() const {
  std::vector<char> col_hit(n_, 0);
  for (unsigned r = 0; r < n_; ++r) {
    unsigned ones = 0, where = 0;
    for (unsigned w = 0; w < words_; ++w) {
      std::uint64_t word = bits_[r * words_ + w];
      ones += static_cast<unsigned>(std::popcount(word));
      if (word) where = w * 64 + static_cast<unsigned>(std::countr_zero(word));
    }
    if (ones != 1 || col_hit[where]) return false;
    col_hit[where] = 1;
  }
  return true;
}

std::optional<Permutation> Gf2Matrix::to_permutation() const {
  if (!is_permutation_matrix()) return std::nullopt;
  std::vector<Vertex> dest(n_);
  for (unsigned r = 0; r < n_; ++r)
    for (unsigned c = 0; c < n_; ++c)
      if (get(r, c)) dest[c] = r;
  return Permutation(std::move(dest));
}

Gf2Matrix Gf2Matrix::inverse() const {
  Gf2Matrix m = *this;
  Gf2Matrix inv = identity(n_);
  for (unsigned col = 0; col < n_; ++col) {
    unsigned pivot = col;
    while (pivot < n_ && !m.get(pivot, col)) ++pivot;
    if (pivot == n_) throw InvalidInput("matrix is singular");
    m.swap_rows(pivot, col);
    inv.swap_rows(pivot, col);
    for (unsigned r = 0; r < n_; ++r) {
      if (r != col && m.get(r, col)) {
        m.add_row(col, r);
        inv.add_row(col, r);
      }
    }
  }
  return inv;
}

Gf2Matrix Gf2Matrix::transpose() const {
  Gf2Matrix t(n_);
  for (unsigned r = 0; r < n_; ++r)
    for (unsigned c = 0; c < n_; ++c)
      if (get(r, c)) t.set(c, r, true);
  return t;
}

Gf2Matrix Gf2Matrix::restrict(const std::vector<unsigned>& indices) const {
  Gf2Matrix s(static_cast<unsigned>(indices.size()));
  for (unsigned i = 0; i < indices.size(); ++i)
    for (unsigned j = 0; j < indices.size(); ++j)
      if (get(indices[i], indices[j])) s.set(i, j, true);
  return s;
}

std::uint64_t Gf2Matrix::key() const {
  std::uint64_t k = 0;
  for (unsigned r = 0; r < n_; ++r)
    for (unsigned c = 0; c < n_; ++c)
      if (get(r, c)) k |= std::uint64_t{1} << (r * n_ + c);
  return k;
}

std::string Gf2Matrix::to_string() const {
  std::ostringstream os;
  for (unsigned r = 0; r < n_; ++r) {
    for (unsigned c = 0; c < n_; ++c) os << (get(r, c) ? '1' : '0');
    os << '\n';
  }
  return os.str();
}

Gf2Matrix apply_cnot(const Gf2Matrix& m, unsigned control, unsigned target) {
  if (control == target) throw InvalidInput("CNOT control equals target");
  if (control >= m.size() || target >= m.size()) {
    throw InvalidInput("CNOT qubit out of range");
  }
  Gf2Matrix r = m;
  r.add_row(control, target);
  return r;
}

Gf2Matrix multiply(const Gf2Matrix& a, const Gf2Matrix& b) {
  if (a.n_ != b.n_) throw InvalidInput("matrix dimension mismatch");
  Gf2Matrix out(a.n_);
  for (unsigned i = 0; i < a.n_; ++i) {
    std::uint64_t* dst = &out.bits_[i * out.words_];
    for (unsigned k = 0; k < a.n_; ++k) {
      if (!a.get(i, k)) continue;
      const std::uint64_t* src = &b.bits_[k * b.words_];
      for (unsigned w = 0; w < out.words_; ++w) dst[w] ^= src[w];
    }
  }
  return out;
}

std::optional<std::vector<bool>> solve_row_combination(const Gf2Matrix& a,
                                                       const std::vector<bool>& b) {
  // x^T A = b  <=>  A^T x = b; eliminate on the augmented system.
  const unsigned n = a.size();
  std::vector<std::vector<char>> sys(n, std::vector<char>(n + 1, 0));
  for (unsigned col = 0; col < n; ++col) {
    for (unsigned row = 0; row < n; ++row) sys[col][row] = a.get(row, col);
    sys[col][n] = b[col];
  }
  std::vector<int> pivot_of(n, -1);
  unsigned r = 0;
  for (unsigned c = 0; c < n && r < n; ++c) {
    unsigned p = r;
    while (p < n && !sys[p][c]) ++p;
    if (p == n) continue;
    std::swap(sys[p], sys[r]);
    for (unsigned i = 0; i < n; ++i) {
      if (i != r && sys[i][c]) {
        for (unsigned j = c; j <= n; ++j) sys[i][j] ^= sys[r][j];
      }
    }
    pivot_of[c] = static_cast<int>(r);
    ++r;
  }
  for (unsigned i = r; i < n; ++i)
    if (sys[i][n]) return std::nullopt;
  std::vector<bool> x(n, false);
  for (unsigned c = 0; c < n; ++c)
    if (pivot_of[c] >= 0) x[c] = sys[pivot_of[c]][n];
  return x;
}

}  // namespace permsynth
