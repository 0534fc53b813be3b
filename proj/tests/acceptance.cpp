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

// End-to-end acceptance run. Prints one PASS/FAIL line per criterion;
// pass criterion numbers as arguments to run a subset.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>

#include "permsynth/baselines.hpp"
#include "permsynth/compile.hpp"
#include "permsynth/synth.hpp"

using namespace permsynth;

namespace {

// ---- pinned tolerances ----------------------------------------------------
constexpr double kCnotWinTarget = 0.96;      // criterion 3
constexpr double kCnotWinTolerance = 0.04;
constexpr double kRowcolWinTarget = 0.888;   // criterion 4
constexpr double kRowcolWinTolerance = 0.04;
constexpr double kReversalSizeTolerance = 0.10;   // criterion 7
constexpr double kReversalDepthTolerance = 0.30;
constexpr double kMaxOverMedianRuntime = 3.0;     // criterion 8
constexpr double kLargeInstanceSeconds = 60.0;
constexpr double kHardInstanceSpread = 10.0;
constexpr unsigned kPathDepthFactor = 3;          // criterion 10

constexpr std::uint64_t kSeed = 20240917;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

void report(int id, const std::string& title, const Outcome& o, double secs) {
  std::printf("%s criterion %d (%s): %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", id, title.c_str(),
              o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::vector<Permutation> all_perms(unsigned n) {
  std::vector<Permutation> out;
  Permutation p = Permutation::identity(n);
  do {
    out.push_back(p);
  } while (next_permutation(p));
  return out;
}

std::vector<Permutation> random_perms(unsigned n, std::size_t count, std::uint64_t seed) {
  Sampler s;
  s.all = false;
  s.count = count;
  s.seed = seed;
  return s.draw(n);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2;
}

// 1. Exact optima equal the BFS oracle.
Outcome oracle_equivalence() {
  unsigned checked = 0, mismatches = 0;
  std::string first;
  auto check = [&](const CouplingGraph& g, const Gf2Matrix& m, Primitive prim, Objective obj) {
    const auto r = exact_synth(g, m, prim, obj);
    const unsigned want = bfs_oracle(g, m, prim, obj);
    ++checked;
    if (r.optimum != want || !verify(r.circuit, g, m)) {
      if (!mismatches++) {
        first = m.to_string() + " " + std::string(primitive_name(prim)) + "/" +
                std::string(objective_name(obj)) + " got " + std::to_string(r.optimum) +
                " want " + std::to_string(want);
      }
    }
  };
  unsigned invertible = 0;
  for (const auto& g : {CouplingGraph::path(3), CouplingGraph::ring(3)}) {
    invertible = 0;
    for (unsigned bits = 0; bits < 512; ++bits) {
      Gf2Matrix m(3);
      for (unsigned e = 0; e < 9; ++e) m.set(e / 3, e % 3, (bits >> e) & 1);
      if (!m.is_invertible()) continue;
      ++invertible;
      for (auto obj : {Objective::Size, Objective::Depth}) {
        check(g, m, Primitive::Cnot, obj);
        if (m.is_permutation_matrix()) check(g, m, Primitive::Swap, obj);
      }
    }
  }
  const auto p4 = CouplingGraph::path(4);
  for (const auto& p : all_perms(4)) {
    for (auto prim : {Primitive::Cnot, Primitive::Swap}) {
      for (auto obj : {Objective::Size, Objective::Depth}) {
        check(p4, Gf2Matrix::from_permutation(p), prim, obj);
      }
    }
  }
  Outcome o;
  o.pass = mismatches == 0 && invertible == 168;
  o.detail = std::to_string(checked) + " instances, " + std::to_string(mismatches) +
             " mismatches, " + std::to_string(invertible) + " invertible 3x3";
  if (mismatches) o.detail += "; first: " + first;
  return o;
}

// 2. SWAP-size optimum on paths equals the inversion count.
Outcome inversion_identity() {
  unsigned checked = 0, mismatches = 0;
  for (unsigned n = 2; n <= 5; ++n) {
    const auto g = CouplingGraph::path(n);
    for (const auto& p : all_perms(n)) {
      ++checked;
      if (exact_synth(g, p, Primitive::Swap, Objective::Size).optimum != p.inversions()) {
        ++mismatches;
      }
    }
  }
  return {mismatches == 0,
          std::to_string(checked) + " permutations, " + std::to_string(mismatches) + " mismatches"};
}

// 3. CNOT-depth vs SWAP-depth optima on path:8.
//
// The CNOT optimum is below 3s (s = SWAP-depth optimum) exactly when some
// bound in [1, 3s-1] is satisfiable, since deepening stops at the first
// satisfiable bound. Bounds are tried from 3s-1 downwards: a model is a
// certificate, and only ties have to refute every bound. This skips the
// costly refutation of optimum-1 that full deepening needs.
Outcome cnot_vs_swap_depth() {
  const auto g = CouplingGraph::path(8);
  const auto perms = random_perms(8, 500, kSeed);
  unsigned strictly_better = 0, violations = 0, ties = 0, max_swap = 0;
  for (const auto& p : perms) {
    const auto s = exact_synth(g, p, Primitive::Swap, Objective::Depth);
    if (!verify(s.circuit, g, p)) ++violations;
    max_swap = std::max(max_swap, s.optimum);
    const auto target = Gf2Matrix::from_permutation(p);
    bool below = false;
    for (unsigned b = 3 * s.optimum; b-- > 1 && !below;) {
      const auto enc = encode_cnot(g, target, b, Objective::Depth);
      const auto r = solve(enc.formula);
      if (r.status != SatStatus::Sat) continue;
      const auto c = decode(r.model, enc.vars);
      if (!verify(c, g, target) || c.depth() > b) ++violations;
      below = true;
    }
    if (below) {
      ++strictly_better;
    } else if (!p.is_identity()) {
      // Tie: the expanded SWAP circuit attains 3s, so the bound holds.
      ++ties;
    }
  }
  const double frac = static_cast<double>(strictly_better) / perms.size();
  Outcome o;
  o.pass = violations == 0 && std::abs(frac - kCnotWinTarget) <= kCnotWinTolerance + 1e-12;
  std::ostringstream d;
  d << strictly_better << "/" << perms.size() << " = " << frac * 100
    << "% strictly shallower with CNOTs (target " << kCnotWinTarget * 100 << " +/- "
    << kCnotWinTolerance * 100 << "), " << ties << " ties, " << violations
    << " bound violations, max SWAP depth " << max_swap;
  o.detail = d.str();
  return o;
}

// 4. ROWCOL-Hybrid vs SWAP-size-optimal CNOT count on path:8.
Outcome rowcol_vs_swap_size() {
  const auto g = CouplingGraph::path(8);
  const auto perms = random_perms(8, 1000, kSeed + 4);
  // SWAP-size optimum on a path is the inversion count (criterion 2 checks
  // the identity exhaustively); spot-check it here on the same sample.
  unsigned spot_mismatch = 0;
  for (std::size_t i = 0; i < perms.size(); i += 50) {
    if (exact_synth(g, perms[i], Primitive::Swap, Objective::Size).optimum !=
        perms[i].inversions()) {
      ++spot_mismatch;
    }
  }
  MethodOptions mo;
  mo.cache = std::make_shared<ResidualCache>();
  unsigned wins = 0, ties = 0, invalid = 0;
  for (const auto& p : perms) {
    const auto r = synthesize(Method::RowcolHybrid, g, p, Objective::Size, mo);
    if (!verify(r.circuit, g, p)) ++invalid;
    const std::size_t swap_cnots = 3 * static_cast<std::size_t>(p.inversions());
    if (r.circuit.size() < swap_cnots) ++wins;
    if (r.circuit.size() == swap_cnots) ++ties;
  }
  const double frac = static_cast<double>(wins) / perms.size();
  Outcome o;
  o.pass = invalid == 0 && spot_mismatch == 0 &&
           std::abs(frac - kRowcolWinTarget) <= kRowcolWinTolerance + 1e-12;
  std::ostringstream d;
  d << wins << "/" << perms.size() << " = " << frac * 100 << "% fewer CNOTs (target "
    << kRowcolWinTarget * 100 << " +/- " << kRowcolWinTolerance * 100 << "), " << ties
    << " ties, " << invalid << " invalid, " << spot_mismatch << " spot-check mismatches";
  o.detail = d.str();
  return o;
}

// 5. Elimination order matters.
Outcome order_sensitivity() {
  const auto g = CouplingGraph::path(8);
  const auto perms = random_perms(8, 200, kSeed + 5);
  const auto orders = elimination_orders(g, 1);
  double best = 1e18, worst = -1;
  std::string best_order, worst_order;
  for (const auto& order : orders) {
    MethodOptions mo;
    mo.order = OrderStrategy::fixed(order);
    double total = 0;
    for (const auto& p : perms) {
      total += synthesize(Method::Rowcol, g, p, Objective::Size, mo).circuit.size();
    }
    const double mean = total / perms.size();
    std::string label;
    for (Vertex v : order) label += std::to_string(v);
    if (mean < best) best = mean, best_order = label;
    if (mean > worst) worst = mean, worst_order = label;
  }
  std::ostringstream d;
  d << orders.size() << " orders; best mean " << best << " (" << best_order << "), worst mean "
    << worst << " (" << worst_order << ")";
  return {best < worst, d.str()};
}

// 6. Every method verifies on randomized suites.
Outcome universal_correctness() {
  struct Topo {
    std::string name;
    std::function<CouplingGraph(unsigned, std::uint64_t)> make;
  };
  const std::vector<Topo> topos = {
      {"path", [](unsigned n, std::uint64_t) { return CouplingGraph::path(n); }},
      {"ring", [](unsigned n, std::uint64_t) { return CouplingGraph::ring(n); }},
      {"tree", [](unsigned n, std::uint64_t s) { return CouplingGraph::random_tree(n, s); }},
      {"grid", [](unsigned n, std::uint64_t) {
         unsigned w = 1;
         while (w * w < n) w *= 2;
         return CouplingGraph::grid(w, n / w);
       }}};
  unsigned runs = 0, failures = 0;
  std::string first;
  for (const auto& topo : topos) {
    for (unsigned n : {4u, 8u, 16u, 32u}) {
      const auto perms = random_perms(n, 50, kSeed + n);
      for (std::size_t i = 0; i < perms.size(); ++i) {
        const auto g = topo.make(n, kSeed + i);
        std::vector<Method> methods = {Method::Rowcol, Method::RowcolHybrid, Method::LrSynth,
                                       Method::LrSynthHybrid};
        if (g.shape() == Shape::Path) methods.push_back(Method::OddEven);
        if (n <= 4) {
          methods.push_back(Method::CnotOpt);
          methods.push_back(Method::SwapOpt);
        }
        for (auto m : methods) {
          MethodOptions mo;
          mo.order = n <= 8 ? OrderStrategy::exhaustive() : OrderStrategy::sample(3, i);
          mo.exact.time_limit = 10.0;
          for (auto obj : {Objective::Size, Objective::Depth}) {
            if (obj == Objective::Size && m != Method::CnotOpt && m != Method::SwapOpt) continue;
            ++runs;
            std::string why;
            try {
              const auto r = synthesize(m, g, perms[i], obj, mo);
              if (r.timed_out) {
                why = "timeout";
              } else if (auto v = verify(r.circuit, g, perms[i]); !v) {
                why = v.detail;
              }
            } catch (const std::exception& e) {
              why = e.what();
            }
            if (!why.empty() && !failures++) {
              first = topo.name + ":" + std::to_string(n) + " " + std::string(method_name(m)) +
                      " perm " + perms[i].to_csv() + ": " + why;
            }
          }
        }
      }
    }
  }
  Outcome o;
  o.pass = failures == 0;
  o.detail = std::to_string(runs) + " syntheses, " + std::to_string(failures) + " failures";
  if (failures) o.detail += "; first: " + first;
  return o;
}

// 7. LR-Synth vs odd-even on path reversals.
Outcome reversal_vs_odd_even() {
  Outcome o;
  std::ostringstream d;
  for (unsigned n : {8u, 16u, 32u, 64u}) {
    const auto g = CouplingGraph::path(n);
    const auto p = Permutation::reversal(n);
    const auto lr = synthesize(Method::LrSynth, g, p, Objective::Depth);
    const auto oe = synthesize(Method::OddEven, g, p, Objective::Depth);
    const double size_ref = n * (n - 1) / 2.0;
    const double depth_ref = n;
    const bool ok = verify(lr.circuit, g, p) && oe.circuit.size() == size_ref &&
                    oe.circuit.depth() == depth_ref &&
                    std::abs(lr.circuit.size() - size_ref) <= kReversalSizeTolerance * size_ref &&
                    std::abs(lr.circuit.depth() - depth_ref) <= kReversalDepthTolerance * depth_ref;
    o.pass &= ok;
    d << "n=" << n << " size " << lr.circuit.size() << "/" << size_ref << " depth "
      << lr.circuit.depth() << "/" << depth_ref << (ok ? "" : " (out of range)") << "; ";
  }
  o.detail = d.str();
  return o;
}

// 8. LR-Synth runtime is smooth on rings; the exact solver is not.
Outcome scalability() {
  Outcome o;
  std::ostringstream d;
  constexpr int kRepeats = 3;  // min-of-k timing per instance
  for (unsigned n : {16u, 32u, 64u, 100u}) {
    const auto g = CouplingGraph::ring(n);
    const auto perms = random_perms(n, 50, kSeed + 8 + n);
    std::vector<double> times;
    double worst_single = 0;
    for (const auto& p : perms) {
      double best = 1e18;
      for (int k = 0; k < kRepeats; ++k) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto r = synthesize(Method::LrSynth, g, p, Objective::Depth);
        const double t = seconds_since(t0);
        best = std::min(best, t);
        worst_single = std::max(worst_single, t);
        if (k == 0 && !verify(r.circuit, g, p)) o.pass = false;
      }
      times.push_back(best);
    }
    const double ratio = *std::max_element(times.begin(), times.end()) / median(times);
    const bool ok = ratio <= kMaxOverMedianRuntime &&
                    (n < 100 || worst_single < kLargeInstanceSeconds);
    o.pass &= ok;
    d << "ring:" << n << " median " << median(times) * 1e3 << "ms max/median " << ratio
      << (ok ? "" : " (out of range)") << "; ";
  }
  // Contrast: exact SWAP-depth synthesis on ring:24.
  const auto g = CouplingGraph::ring(24);
  const auto perms = random_perms(24, 50, kSeed + 24);  // same sample size as above
  std::vector<double> exact_times;
  ExactOptions eo;
  eo.time_limit = 120.0;
  unsigned timeouts = 0;
  for (const auto& p : perms) {
    double best = 1e18;
    bool timed_out = false;
    for (int k = 0; k < kRepeats; ++k) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto r = exact_synth(g, p, Primitive::Swap, Objective::Depth, eo);
      best = std::min(best, seconds_since(t0));
      timed_out = r.timed_out;
      if (timed_out) break;  // no point repeating a 120 s budget
    }
    exact_times.push_back(best);
    timeouts += timed_out;
  }
  const double spread = *std::max_element(exact_times.begin(), exact_times.end()) /
                        *std::min_element(exact_times.begin(), exact_times.end());
  o.pass &= spread >= kHardInstanceSpread;
  d << "exact swap-depth ring:24 spread " << spread << "x (min "
    << *std::min_element(exact_times.begin(), exact_times.end()) * 1e3 << "ms, max "
    << *std::max_element(exact_times.begin(), exact_times.end()) * 1e3 << "ms, " << timeouts
    << " timeouts)";
  o.detail = d.str();
  return o;
}

// 9. Compile pipeline.
Outcome compile_pipeline_check() {
  const auto g = CouplingGraph::path(8);
  unsigned size_increases = 0, broken = 0, audit_hits = 0, audit_worse = 0, accepted_depth = 0;
  long size_before = 0, size_after = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    PipelineOptions po;
    po.qubits = 8;
    po.layers = 8;
    po.seed = kSeed + s;
    po.resynth.block_time_limit = 10.0;

    po.objective = Objective::Size;
    po.method = Method::RowcolHybrid;
    const auto rs = compile_pipeline(g, po);
    if (rs.report.after.size > rs.report.before.size) ++size_increases;
    if (!same_action(rs.routed, rs.final_circuit)) ++broken;
    size_before += rs.report.before.size;
    size_after += rs.report.after.size;

    po.objective = Objective::Depth;
    po.method = Method::LrSynthHybrid;
    const auto rd = compile_pipeline(g, po);
    if (!same_action(rd.routed, rd.final_circuit)) ++broken;
    for (const auto& b : rd.report.blocks) {
      if (!b.accepted) continue;
      ++accepted_depth;
      if (!improves(*b.synthesized, b.original, Objective::Depth)) ++broken;
      if (*b.global_depth_delta >= 0) ++audit_hits;
      if (*b.global_depth_delta > 0) ++audit_worse;
    }
  }
  std::ostringstream d;
  d << "size objective: " << size_increases << " increases, total " << size_before << " -> "
    << size_after << "; depth objective: " << accepted_depth << " accepted blocks, "
    << audit_hits << " without global depth gain (" << audit_worse << " increase it); "
    << broken << " semantic/accept-rule violations";
  return {size_increases == 0 && broken == 0 && audit_hits >= 1, d.str()};
}

// 10. What is checked instead of the figure-only numbers.
Outcome figure_only_results() {
  Outcome o;
  std::ostringstream d;
  unsigned depth_violations = 0, invalid = 0, instances = 0;
  for (unsigned n : {8u, 16u, 32u, 64u}) {
    const auto g = CouplingGraph::path(n);
    for (const auto& p : random_perms(n, 20, kSeed + 10 + n)) {
      const auto r = synthesize(Method::LrSynth, g, p, Objective::Depth);
      ++instances;
      if (!verify(r.circuit, g, p)) ++invalid;
      if (r.circuit.depth() > kPathDepthFactor * n) ++depth_violations;
    }
  }
  o.pass = depth_violations == 0 && invalid == 0;
  d << instances << " path instances, " << invalid << " invalid, " << depth_violations
    << " above 3n depth; recorded means:";
  for (const char* kind : {"tree", "grid"}) {
    for (unsigned n : {16u, 32u}) {
      double total = 0;
      const auto perms = random_perms(n, 20, kSeed + 100 + n);
      for (std::size_t i = 0; i < perms.size(); ++i) {
        const auto g = std::string(kind) == "tree" ? CouplingGraph::random_tree(n, kSeed + i)
                                                   : CouplingGraph::grid(n == 16 ? 4 : 8, 4);
        const auto r = synthesize(Method::LrSynth, g, perms[i], Objective::Depth);
        if (!verify(r.circuit, g, perms[i])) o.pass = false;
        total += r.circuit.depth();
      }
      d << " " << kind << ":" << n << "=" << total / perms.size();
    }
  }
  o.detail = d.str();
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"exact optima equal BFS oracle", oracle_equivalence},
      {"SWAP-size optimum equals inversions", inversion_identity},
      {"CNOT vs SWAP depth on path:8", cnot_vs_swap_depth},
      {"ROWCOL-Hybrid vs SWAP-size optimum", rowcol_vs_swap_size},
      {"elimination order sensitivity", order_sensitivity},
      {"every method verifies", universal_correctness},
      {"LR-Synth vs odd-even on reversals", reversal_vs_odd_even},
      {"LR-Synth runtime scaling", scalability},
      {"compile pipeline", compile_pipeline_check},
      {"figure-only results", figure_only_results},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::stoi(argv[i]));
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    if (!only.empty() && !only.count(id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    report(id, criteria[i].first, o, seconds_since(t0));
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
