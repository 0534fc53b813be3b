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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <random>

#include "permsynth/sat.hpp"

namespace permsynth {

namespace {

// Internal literal: 2*var + sign, var 0-based.
using ILit = std::uint32_t;
using CRef = std::uint32_t;
constexpr CRef kNoReason = 0xffffffffu;

inline ILit mk_lit(std::uint32_t var, bool negative) { return 2 * var + (negative ? 1 : 0); }
inline ILit neg(ILit l) { return l ^ 1u; }
inline std::uint32_t var_of(ILit l) { return l >> 1; }
inline bool sign_of(ILit l) { return l & 1u; }

struct Watcher {
  CRef cref;
  ILit blocker;
};

// Clause layout in the arena: [size, flags, lbd, activity-bits, lits...]
constexpr std::uint32_t kHeader = 4;
constexpr std::uint32_t kLearnt = 1;
constexpr std::uint32_t kDeleted = 2;

double luby(double y, int x) {
  int size = 1, seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  return std::pow(y, seq);
}

}  // namespace

std::string_view sat_status_name(SatStatus s) {
  switch (s) {
    case SatStatus::Sat: return "SAT";
    case SatStatus::Unsat: return "UNSAT";
    case SatStatus::Timeout: return "TIMEOUT";
  }
  return "?";
}

struct CdclSolver::Impl {
  std::uint32_t num_vars = 0;
  std::vector<std::uint32_t> arena;
  std::vector<CRef> original;
  std::vector<CRef> learnts;
  std::vector<std::vector<Watcher>> watches;

  std::vector<std::int8_t> value;  // per var: 1 true, -1 false, 0 undef
  std::vector<std::int8_t> phase;
  std::vector<int> level;
  std::vector<CRef> reason;
  std::vector<ILit> trail;
  std::vector<std::size_t> trail_lim;
  std::size_t qhead = 0;

  std::vector<double> activity;
  double var_inc = 1.0;
  double var_decay = 0.95;
  float cla_inc = 1.0f;
  float cla_decay = 0.999f;

  // Binary max-heap of variables keyed by activity.
  std::vector<std::uint32_t> heap;
  std::vector<int> heap_pos;

  std::vector<char> seen;
  std::vector<ILit> analyze_stack;
  std::vector<int> lbd_stamp;
  int lbd_counter = 0;

  bool unsat_at_root = false;
  SatStats stats;

  // --- arena helpers
  std::uint32_t csize(CRef c) const { return arena[c]; }
  std::uint32_t& cflags(CRef c) { return arena[c + 1]; }
  std::uint32_t& clbd(CRef c) { return arena[c + 2]; }
  float cact(CRef c) const {
    float f;
    std::memcpy(&f, &arena[c + 3], sizeof f);
    return f;
  }
  void set_cact(CRef c, float f) { std::memcpy(&arena[c + 3], &f, sizeof f); }
  ILit* clits(CRef c) { return &arena[c + kHeader]; }

  int lit_value(ILit l) const {
    const int v = value[var_of(l)];
    return sign_of(l) ? -v : v;
  }
  int decision_level() const { return static_cast<int>(trail_lim.size()); }

  // --- heap
  bool heap_less(std::uint32_t a, std::uint32_t b) const { return activity[a] > activity[b]; }
  void heap_up(std::size_t i) {
    std::uint32_t v = heap[i];
    while (i > 0) {
      std::size_t p = (i - 1) / 2;
      if (!heap_less(v, heap[p])) break;
      heap[i] = heap[p];
      heap_pos[heap[i]] = static_cast<int>(i);
      i = p;
    }
    heap[i] = v;
    heap_pos[v] = static_cast<int>(i);
  }
  void heap_down(std::size_t i) {
    std::uint32_t v = heap[i];
    const std::size_t n = heap.size();
    while (true) {
      std::size_t c = 2 * i + 1;
      if (c >= n) break;
      if (c + 1 < n && heap_less(heap[c + 1], heap[c])) ++c;
      if (!heap_less(heap[c], v)) break;
      heap[i] = heap[c];
      heap_pos[heap[i]] = static_cast<int>(i);
      i = c;
    }
    heap[i] = v;
    heap_pos[v] = static_cast<int>(i);
  }
  void heap_insert(std::uint32_t v) {
    if (heap_pos[v] >= 0) return;
    heap.push_back(v);
    heap_up(heap.size() - 1);
  }
  std::uint32_t heap_pop() {
    std::uint32_t top = heap[0];
    heap_pos[top] = -1;
    std::uint32_t last = heap.back();
    heap.pop_back();
    if (!heap.empty()) {
      heap[0] = last;
      heap_pos[last] = 0;
      heap_down(0);
    }
    return top;
  }

  void bump_var(std::uint32_t v) {
    activity[v] += var_inc;
    if (activity[v] > 1e100) {
      for (auto& a : activity) a *= 1e-100;
      var_inc *= 1e-100;
    }
    if (heap_pos[v] >= 0) heap_up(static_cast<std::size_t>(heap_pos[v]));
  }
  void bump_clause(CRef c) {
    float a = cact(c) + cla_inc;
    set_cact(c, a);
    if (a > 1e20f) {
      for (CRef l : learnts) set_cact(l, cact(l) * 1e-20f);
      cla_inc *= 1e-20f;
    }
  }

  CRef alloc_clause(const std::vector<ILit>& lits, bool learnt) {
    CRef c = static_cast<CRef>(arena.size());
    arena.push_back(static_cast<std::uint32_t>(lits.size()));
    arena.push_back(learnt ? kLearnt : 0);
    arena.push_back(0);
    arena.push_back(0);
    set_cact(c, 0.0f);
    arena.insert(arena.end(), lits.begin(), lits.end());
    return c;
  }

  void attach(CRef c) {
    ILit* l = clits(c);
    watches[neg(l[0])].push_back({c, l[1]});
    watches[neg(l[1])].push_back({c, l[0]});
  }

  void enqueue(ILit l, CRef from) {
    const std::uint32_t v = var_of(l);
    value[v] = sign_of(l) ? -1 : 1;
    level[v] = decision_level();
    reason[v] = from;
    trail.push_back(l);
  }

  CRef propagate() {
    CRef confl = kNoReason;
    while (qhead < trail.size()) {
      const ILit p = trail[qhead++];
      const ILit false_lit = neg(p);
      auto& ws = watches[p];
      ++stats.propagations;
      std::size_t i = 0, j = 0;
      const std::size_t end = ws.size();
      while (i < end) {
        const Watcher w = ws[i];
        if (lit_value(w.blocker) == 1) {
          ws[j++] = ws[i++];
          continue;
        }
        const CRef cr = w.cref;
        ILit* c = clits(cr);
        if (c[0] == false_lit) std::swap(c[0], c[1]);
        ++i;
        const ILit first = c[0];
        const Watcher nw{cr, first};
        if (first != w.blocker && lit_value(first) == 1) {
          ws[j++] = nw;
          continue;
        }
        const std::uint32_t sz = csize(cr);
        bool moved = false;
        for (std::uint32_t k = 2; k < sz; ++k) {
          if (lit_value(c[k]) != -1) {
            c[1] = c[k];
            c[k] = false_lit;
            watches[neg(c[1])].push_back(nw);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        ws[j++] = nw;
        if (lit_value(first) == -1) {
          confl = cr;
          qhead = trail.size();
          while (i < end) ws[j++] = ws[i++];
        } else {
          enqueue(first, cr);
        }
      }
      ws.resize(j);
      if (confl != kNoReason) break;
    }
    return confl;
  }

  void cancel_until(int lvl) {
    if (decision_level() <= lvl) return;
    for (std::size_t i = trail.size(); i > trail_lim[lvl]; --i) {
      const std::uint32_t v = var_of(trail[i - 1]);
      phase[v] = value[v];
      value[v] = 0;
      reason[v] = kNoReason;
      heap_insert(v);
    }
    trail.resize(trail_lim[lvl]);
    trail_lim.resize(lvl);
    qhead = trail.size();
  }

  bool redundant(ILit l) {
    const CRef r = reason[var_of(l)];
    if (r == kNoReason) return false;
    const ILit* c = clits(r);
    for (std::uint32_t k = 1; k < csize(r); ++k) {
      const std::uint32_t v = var_of(c[k]);
      if (!seen[v] && level[v] > 0) return false;
    }
    return true;
  }

  int compute_lbd(const std::vector<ILit>& lits) {
    ++lbd_counter;
    int count = 0;
    for (ILit l : lits) {
      const int lv = level[var_of(l)];
      if (static_cast<std::size_t>(lv) >= lbd_stamp.size()) lbd_stamp.resize(lv + 1, 0);
      if (lbd_stamp[lv] != lbd_counter) {
        lbd_stamp[lv] = lbd_counter;
        ++count;
      }
    }
    return count;
  }

  void analyze(CRef confl, std::vector<ILit>& learnt, int& back_level) {
    learnt.clear();
    learnt.push_back(0);
    int path = 0;
    ILit p = 0;
    bool have_p = false;
    std::size_t index = trail.size();
    do {
      if (cflags(confl) & kLearnt) bump_clause(confl);
      const ILit* c = clits(confl);
      const std::uint32_t sz = csize(confl);
      for (std::uint32_t k = have_p ? 1 : 0; k < sz; ++k) {
        const ILit q = c[k];
        const std::uint32_t v = var_of(q);
        if (!seen[v] && level[v] > 0) {
          bump_var(v);
          seen[v] = 1;
          if (level[v] >= decision_level()) {
            ++path;
          } else {
            learnt.push_back(q);
          }
        }
      }
      while (!seen[var_of(trail[--index])]) {}
      p = trail[index];
      have_p = true;
      confl = reason[var_of(p)];
      seen[var_of(p)] = 0;
      --path;
    } while (path > 0);
    learnt[0] = neg(p);

    // Local minimisation: drop literals implied by the rest of the clause.
    analyze_stack.assign(learnt.begin(), learnt.end());
    std::size_t keep = 1;
    for (std::size_t k = 1; k < learnt.size(); ++k) {
      if (!redundant(learnt[k])) learnt[keep++] = learnt[k];
    }
    learnt.resize(keep);
    for (ILit l : analyze_stack) seen[var_of(l)] = 0;

    if (learnt.size() == 1) {
      back_level = 0;
    } else {
      std::size_t max_i = 1;
      for (std::size_t k = 2; k < learnt.size(); ++k)
        if (level[var_of(learnt[k])] > level[var_of(learnt[max_i])]) max_i = k;
      std::swap(learnt[1], learnt[max_i]);
      back_level = level[var_of(learnt[1])];
    }
  }

  bool locked(CRef c) {
    const ILit first = clits(c)[0];
    return lit_value(first) == 1 && reason[var_of(first)] == c;
  }

  void reduce_db() {
    std::sort(learnts.begin(), learnts.end(), [this](CRef a, CRef b) {
      if (clbd(a) != clbd(b)) return clbd(a) > clbd(b);
      return cact(a) < cact(b);
    });
    const std::size_t target = learnts.size() / 2;
    std::size_t removed = 0;
    std::vector<CRef> kept;
    kept.reserve(learnts.size());
    for (CRef c : learnts) {
      if (removed < target && clbd(c) > 2 && csize(c) > 2 && !locked(c)) {
        cflags(c) |= kDeleted;
        ++removed;
      } else {
        kept.push_back(c);
      }
    }
    learnts.swap(kept);
    garbage_collect();
  }

  void garbage_collect() {
    std::vector<std::uint32_t> fresh;
    fresh.reserve(arena.size());
    auto move_clause = [&](CRef c) {
      const CRef nc = static_cast<CRef>(fresh.size());
      const std::uint32_t len = kHeader + csize(c);
      fresh.insert(fresh.end(), arena.begin() + c, arena.begin() + c + len);
      arena[c + 2] = nc;  // forwarding address in the old lbd slot
      return nc;
    };
    std::vector<CRef> reloc_orig, reloc_learnt;
    for (CRef c : original) reloc_orig.push_back(move_clause(c));
    for (CRef c : learnts) reloc_learnt.push_back(move_clause(c));
    for (ILit l : trail) {
      const std::uint32_t v = var_of(l);
      if (reason[v] != kNoReason) {
        const CRef old = reason[v];
        reason[v] = (arena[old + 1] & kDeleted) ? kNoReason : arena[old + 2];
      }
    }
    arena.swap(fresh);
    original.swap(reloc_orig);
    learnts.swap(reloc_learnt);
    for (auto& ws : watches) ws.clear();
    for (CRef c : original) attach(c);
    for (CRef c : learnts) attach(c);
  }

  std::uint32_t pick_branch_var() {
    while (!heap.empty()) {
      std::uint32_t v = heap_pop();
      if (value[v] == 0) return v;
    }
    return num_vars;
  }
};

CdclSolver::CdclSolver(const CnfFormula& formula, std::uint64_t seed)
    : impl_(std::make_unique<Impl>()) {
  Impl& s = *impl_;
  s.num_vars = static_cast<std::uint32_t>(formula.num_vars());
  const std::size_t nv = s.num_vars;
  s.watches.assign(2 * nv, {});
  s.value.assign(nv, 0);
  s.phase.assign(nv, -1);
  s.level.assign(nv, 0);
  s.reason.assign(nv, kNoReason);
  s.activity.assign(nv, 0.0);
  s.seen.assign(nv, 0);
  s.heap_pos.assign(nv, -1);
  if (seed != 0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(0.0, 1e-5);
    for (auto& a : s.activity) a = jitter(rng);
  }
  for (std::uint32_t v = 0; v < nv; ++v) s.heap_insert(v);

  std::vector<ILit> lits;
  for (std::size_t i = 0; i < formula.num_clauses() && !s.unsat_at_root; ++i) {
    lits.clear();
    for (Lit l : formula.clause(i)) {
      lits.push_back(mk_lit(static_cast<std::uint32_t>(std::abs(l)) - 1, l < 0));
    }
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    bool tautology = false;
    for (std::size_t k = 1; k < lits.size(); ++k)
      if (lits[k] == neg(lits[k - 1])) tautology = true;
    if (tautology) continue;
    // Drop literals false at the root; satisfied clauses are skipped.
    std::size_t keep = 0;
    bool satisfied = false;
    for (ILit l : lits) {
      const int val = s.lit_value(l);
      if (val == 1) satisfied = true;
      if (val == 0) lits[keep++] = l;
    }
    if (satisfied) continue;
    lits.resize(keep);
    if (lits.empty()) {
      s.unsat_at_root = true;
    } else if (lits.size() == 1) {
      s.enqueue(lits[0], kNoReason);
      if (s.propagate() != kNoReason) s.unsat_at_root = true;
    } else {
      CRef c = s.alloc_clause(lits, false);
      s.original.push_back(c);
      s.attach(c);
    }
  }
}

CdclSolver::~CdclSolver() = default;

SatResult CdclSolver::solve(std::optional<double> time_limit) {
  Impl& s = *impl_;
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  const bool limited = time_limit && *time_limit > 0;
  const auto deadline = limited ? start + std::chrono::duration_cast<clock::duration>(
                                              std::chrono::duration<double>(*time_limit))
                                : clock::time_point::max();
  SatResult result;
  auto finish = [&](SatStatus st) {
    result.status = st;
    s.stats.seconds = std::chrono::duration<double>(clock::now() - start).count();
    result.stats = s.stats;
    if (st == SatStatus::Sat) {
      result.model.assign(s.num_vars + 1, false);
      for (std::uint32_t v = 0; v < s.num_vars; ++v) result.model[v + 1] = s.value[v] == 1;
    }
    return result;
  };

  if (s.unsat_at_root) return finish(SatStatus::Unsat);
  if (s.propagate() != kNoReason) return finish(SatStatus::Unsat);

  std::vector<ILit> learnt;
  int restart_index = 0;
  std::uint64_t next_reduce = 4000;
  std::uint64_t reduce_step = 600;
  constexpr double kRestartBase = 100;

  while (true) {
    const auto budget = static_cast<std::uint64_t>(luby(2.0, restart_index++) * kRestartBase);
    std::uint64_t conflicts_here = 0;
    while (true) {
      const CRef confl = s.propagate();
      if (confl != kNoReason) {
        ++s.stats.conflicts;
        ++conflicts_here;
        if (s.decision_level() == 0) return finish(SatStatus::Unsat);
        int back = 0;
        s.analyze(confl, learnt, back);
        s.cancel_until(back);
        if (learnt.size() == 1) {
          s.enqueue(learnt[0], kNoReason);
        } else {
          CRef c = s.alloc_clause(learnt, true);
          s.clbd(c) = static_cast<std::uint32_t>(s.compute_lbd(learnt));
          s.learnts.push_back(c);
          s.attach(c);
          s.bump_clause(c);
          s.enqueue(learnt[0], c);
        }
        s.var_inc /= s.var_decay;
        s.cla_inc /= s.cla_decay;
        if (limited && (s.stats.conflicts & 63) == 0 && clock::now() > deadline) {
          return finish(SatStatus::Timeout);
        }
      } else {
        if (conflicts_here >= budget) {
          s.cancel_until(0);
          ++s.stats.restarts;
          break;
        }
        if (s.stats.conflicts >= next_reduce) {
          next_reduce = s.stats.conflicts + reduce_step * (1 + s.stats.conflicts / 20000);
          reduce_step += 100;
          s.reduce_db();
        }
        const std::uint32_t v = s.pick_branch_var();
        if (v == s.num_vars) return finish(SatStatus::Sat);
        ++s.stats.decisions;
        if (limited && (s.stats.decisions & 1023) == 0 && clock::now() > deadline) {
          return finish(SatStatus::Timeout);
        }
        s.trail_lim.push_back(s.trail.size());
        s.enqueue(mk_lit(v, s.phase[v] != 1), kNoReason);
      }
    }
  }
}

}  // namespace permsynth
