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

#include <atomic>
#include <exception>
#include <iomanip>
#include <mutex>
#include <random>
#include <thread>

#include "permsynth/exact.hpp"

namespace permsynth {

std::vector<Permutation> Sampler::draw(unsigned n) const {
  std::vector<Permutation> out;
  if (all) {
    if (n > 10) throw InvalidInput("refusing to enumerate " + std::to_string(n) + "! permutations");
    Permutation p = Permutation::identity(n);
    do {
      out.push_back(p);
    } while (next_permutation(p));
    return out;
  }
  std::mt19937_64 rng(seed);
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(Permutation::random(n, rng()));
  return out;
}

SweepResult sweep_all(const CouplingGraph& g, Primitive primitive, Objective objective,
                      const Sampler& sampler, const ExactOptions& options, unsigned workers) {
  const auto perms = sampler.draw(g.size());
  SweepResult r;
  r.rows.resize(perms.size());
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(1, perms.size())));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < perms.size(); i = next++) {
      try {
        SynthesisResult s = exact_synth(g, perms[i], primitive, objective, options);
        SweepRow& row = r.rows[i];
        row.perm = perms[i];
        row.queries = s.queries.size();
        row.wall_ms = s.wall_seconds * 1000.0;
        if (!s.timed_out) row.optimum = s.optimum;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (const auto& row : r.rows) {
    if (!row.optimum) {
      ++r.timeouts;
      continue;
    }
    ++r.histogram[*row.optimum];
    if (!r.witness || *row.optimum > r.max_optimum ||
        (*row.optimum == r.max_optimum && row.perm < *r.witness)) {
      r.max_optimum = *row.optimum;
      r.witness = row.perm;
    }
  }
  return r;
}

void write_sweep_csv(std::ostream& out, const SweepResult& r) {
  out << "perm,optimum,queries,wall_ms\n";
  for (const auto& row : r.rows) {
    out << '"' << row.perm.to_csv() << "\",";
    if (row.optimum) out << *row.optimum;
    out << ',' << row.queries << ',' << std::fixed << std::setprecision(3) << row.wall_ms
        << '\n';
  }
  out.unsetf(std::ios::floatfield);
}

}  // namespace permsynth
