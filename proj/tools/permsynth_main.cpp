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

// permsynth: command-line front end.
//
// Exit codes: 0 success, 1 invalid input (or failed verification),
// 2 timeout with a partial result.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "permsynth/baselines.hpp"
#include "permsynth/circuit_json.hpp"
#include "permsynth/compile.hpp"
#include "permsynth/synth.hpp"

namespace ps = permsynth;
using nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kTimeout = 2;

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::uint64_t to_u64(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    const auto v = std::stoull(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ps::InvalidInput(std::string("bad ") + what + " '" + s + "'");
  }
}

/// csv list, `reversal`, `identity` or `random:seed`.
ps::Permutation parse_perm(const std::string& spec, unsigned n) {
  ps::Permutation p;
  if (spec == "reversal") {
    p = ps::Permutation::reversal(n);
  } else if (spec == "identity") {
    p = ps::Permutation::identity(n);
  } else if (spec.rfind("random:", 0) == 0) {
    p = ps::Permutation::random(n, to_u64(spec.substr(7), "seed"));
  } else {
    p = ps::Permutation::parse(spec);
  }
  if (p.size() != n) {
    throw ps::InvalidInput("permutation has " + std::to_string(p.size()) +
                           " entries but the graph has " + std::to_string(n) + " vertices");
  }
  return p;
}

ps::Sampler parse_enumerate(const std::string& spec, unsigned n) {
  ps::Sampler s;
  if (spec == "all") {
    if (n > 10) {
      throw ps::InvalidInput("enumerating all " + std::to_string(n) +
                             "! permutations is infeasible; use --enumerate random:k:seed");
    }
    return s;
  }
  const auto parts = split(spec, ':');
  if (parts.size() != 3 || parts[0] != "random") {
    throw ps::InvalidInput("--enumerate expects all or random:k:seed");
  }
  s.all = false;
  s.count = to_u64(parts[1], "count");
  s.seed = to_u64(parts[2], "seed");
  return s;
}

struct Common {
  std::optional<double> time_limit;
  std::string backend = "embedded";
  std::string solver;
  unsigned workers = 0;

  ps::ExactOptions exact() const {
    ps::ExactOptions o;
    o.time_limit = time_limit;
    o.solver.time_limit = time_limit;
    if (backend == "external" || !solver.empty()) {
      o.solver.backend = ps::SatBackend::External;
      o.solver.external_solver = solver;
    }
    return o;
  }
  unsigned worker_count() const {
    return workers ? workers : std::max(1u, std::thread::hardware_concurrency());
  }
};

void add_solver_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--time-limit", c.time_limit, "Budget for exact solves, seconds");
  cmd->add_option("--backend", c.backend, "SAT backend")
      ->check(CLI::IsMember({"embedded", "external"}));
  cmd->add_option("--sat-solver", c.solver,
                  std::string("External DIMACS solver binary (default $") +
                      ps::kExternalSolverEnv + ")");
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw ps::InvalidInput("cannot write '" + out + "'");
  f << text;
}

ordered_json metrics_json(const ps::Circuit& c, double wall_ms) {
  const auto cx = ps::cnot_equivalent(c);
  ordered_json m;
  m["size"] = c.size();
  m["depth"] = c.depth();
  m["cnot_equivalent_size"] = cx.size;
  m["cnot_equivalent_depth"] = cx.depth;
  m["wall_ms"] = wall_ms;
  return m;
}

// --- synth -----------------------------------------------------------------

struct SynthArgs {
  std::string graph, perm, method, objective = "depth", order = "exhaustive", format = "json",
                                   out;
  std::optional<unsigned> samples;
  Common common;
};

int run_synth(const SynthArgs& a) {
  const auto g = ps::parse_graph(a.graph);
  const auto p = parse_perm(a.perm, g.size());
  const auto method = ps::parse_method(a.method);
  const auto objective = ps::parse_objective(a.objective);
  ps::MethodOptions mo;
  mo.exact = a.common.exact();
  mo.order = ps::parse_order_strategy(a.order);
  mo.samples = a.samples;

  const auto t0 = std::chrono::steady_clock::now();
  const auto r = ps::synthesize(method, g, p, objective, mo);
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  if (!r.timed_out) {
    if (auto v = ps::verify(r.circuit, g, p); !v) {
      std::cerr << "internal error: synthesised circuit fails verification: " << v.detail
                << "\n";
      return kInvalid;
    }
  }

  std::ostringstream text;
  if (a.format == "text") {
    const auto cx = ps::cnot_equivalent(r.circuit);
    text << "method " << r.method << "\n"
         << "objective " << ps::objective_name(r.objective) << "\n"
         << "size " << r.circuit.size() << "\n"
         << "depth " << r.circuit.depth() << "\n"
         << "cnot_equivalent_size " << cx.size << "\n"
         << "cnot_equivalent_depth " << cx.depth << "\n"
         << "wall_ms " << ms << "\n";
    if (r.timed_out) text << "timed_out lower_bound " << r.lower_bound << "\n";
    if (!r.note.empty()) text << "note " << r.note << "\n";
    for (const auto& gate : r.circuit.gates()) {
      text << ps::gate_kind_name(gate.kind);
      for (auto q : gate.qubits) text << ' ' << q;
      text << "\n";
    }
  } else {
    ordered_json j;
    j["method"] = r.method;
    j["objective"] = std::string(ps::objective_name(r.objective));
    j["graph"] = a.graph;
    j["perm"] = p.to_csv();
    j["metrics"] = metrics_json(r.circuit, ms);
    j["timed_out"] = r.timed_out;
    if (r.timed_out) j["lower_bound"] = r.lower_bound;
    j["fallback"] = r.fallback;
    if (!r.note.empty()) j["note"] = r.note;
    j["circuit"] = ps::circuit_to_json(r.circuit);
    text << j.dump(2) << "\n";
  }
  emit(text.str(), a.out);
  return r.timed_out ? kTimeout : kOk;
}

// --- sweep -----------------------------------------------------------------

struct SweepArgs {
  std::string graph, method = "cnot-opt", objective = "depth", enumerate = "all", out;
  Common common;
};

int run_sweep(const SweepArgs& a) {
  const auto g = ps::parse_graph(a.graph);
  const auto method = ps::parse_method(a.method);
  if (method != ps::Method::CnotOpt && method != ps::Method::SwapOpt) {
    throw ps::InvalidInput("sweep runs the exact methods only (cnot-opt, swap-opt)");
  }
  const auto sampler = parse_enumerate(a.enumerate, g.size());
  const auto r = ps::sweep_all(g, ps::method_primitive(method), ps::parse_objective(a.objective),
                               sampler, a.common.exact(), a.common.worker_count());
  std::ostringstream csv;
  ps::write_sweep_csv(csv, r);
  emit(csv.str(), a.out);

  std::ostream& summary = a.out.empty() ? std::cerr : std::cout;
  summary << "instances=" << r.rows.size() << " timeouts=" << r.timeouts
          << " max=" << r.max_optimum;
  if (r.witness) summary << " witness=" << r.witness->to_csv();
  summary << " histogram=";
  bool first = true;
  for (auto [value, count] : r.histogram) {
    summary << (first ? "" : ",") << value << ":" << count;
    first = false;
  }
  summary << "\n";
  return r.timeouts ? kTimeout : kOk;
}

// --- bench -----------------------------------------------------------------

struct BenchArgs {
  std::string topology = "path", sizes = "4..16", methods = "lr-synth,odd-even",
              objective = "depth", out;
  unsigned count = 10;
  std::uint64_t seed = 0;
  Common common;
};

std::vector<unsigned> parse_sizes(const std::string& s) {
  std::vector<unsigned> out;
  if (auto dots = s.find(".."); dots != std::string::npos) {
    const auto lo = to_u64(s.substr(0, dots), "size"), hi = to_u64(s.substr(dots + 2), "size");
    for (auto n = lo; n <= hi; ++n) out.push_back(static_cast<unsigned>(n));
  } else {
    for (const auto& part : split(s, ',')) out.push_back(static_cast<unsigned>(to_u64(part, "size")));
  }
  if (out.empty()) throw ps::InvalidInput("empty size range");
  return out;
}

ps::CouplingGraph bench_graph(const std::string& topology, unsigned n, std::uint64_t seed) {
  if (topology == "path") return ps::CouplingGraph::path(n);
  if (topology == "ring") return ps::CouplingGraph::ring(n);
  if (topology == "tree") return ps::CouplingGraph::random_tree(n, seed);
  if (topology == "grid") {
    unsigned w = static_cast<unsigned>(std::sqrt(static_cast<double>(n)));
    while (w > 1 && n % w) --w;
    if (w < 2) throw ps::InvalidInput("grid size " + std::to_string(n) + " has no 2D factorisation");
    return ps::CouplingGraph::grid(n / w, w);
  }
  throw ps::InvalidInput("unknown topology '" + topology + "'");
}

int run_bench(const BenchArgs& a) {
  const auto sizes = parse_sizes(a.sizes);
  std::vector<ps::Method> methods;
  for (const auto& m : split(a.methods, ',')) methods.push_back(ps::parse_method(m));
  const auto objective = ps::parse_objective(a.objective);

  struct Job {
    unsigned n;
    std::size_t method;
    unsigned instance;
  };
  struct Cell {
    std::optional<double> size, depth, ms;
  };
  std::vector<Job> jobs;
  for (unsigned n : sizes) {
    for (std::size_t m = 0; m < methods.size(); ++m) {
      for (unsigned i = 0; i < a.count; ++i) jobs.push_back({n, m, i});
    }
  }
  // Instance seeds depend on (seed, n, i) only.
  auto instance_seed = [&](unsigned n, unsigned i) {
    std::mt19937_64 rng(a.seed * 1000003ULL + n);
    rng.discard(i);
    return rng();
  };

  ps::MethodOptions mo;
  mo.exact = a.common.exact();
  mo.cache = std::make_shared<ps::ResidualCache>();
  std::vector<Cell> cells(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex err_mutex;
  std::string first_error;
  auto worker = [&] {
    for (std::size_t k; (k = next++) < jobs.size();) {
      const Job& job = jobs[k];
      try {
        const auto s = instance_seed(job.n, job.instance);
        const auto g = bench_graph(a.topology, job.n, s);
        const auto p = ps::Permutation::random(job.n, s);
        const auto t0 = std::chrono::steady_clock::now();
        const auto r = ps::synthesize(methods[job.method], g, p, objective, mo);
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        if (r.timed_out) continue;
        if (!ps::verify(r.circuit, g, p)) throw std::logic_error("unverified circuit");
        cells[k] = {static_cast<double>(r.circuit.size()), static_cast<double>(r.circuit.depth()),
                    ms};
      } catch (const std::exception& e) {
        std::lock_guard lock(err_mutex);
        if (first_error.empty()) first_error = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < a.common.worker_count(); ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (!first_error.empty()) throw ps::InvalidInput(first_error);

  std::ostringstream csv;
  csv << "topology,n,method,mean_size,mean_depth,mean_wall_ms,samples,seed\n";
  std::size_t k = 0;
  bool any_timeout = false;
  for (unsigned n : sizes) {
    for (auto method : methods) {
      double s = 0, d = 0, ms = 0;
      unsigned done = 0;
      for (unsigned i = 0; i < a.count; ++i, ++k) {
        if (!cells[k].size) continue;
        s += *cells[k].size;
        d += *cells[k].depth;
        ms += *cells[k].ms;
        ++done;
      }
      any_timeout |= done < a.count;
      csv << a.topology << ',' << n << ',' << ps::method_name(method) << ',';
      if (done) {
        csv << s / done << ',' << d / done << ',' << ms / done;
      } else {
        csv << ",,";
      }
      csv << ',' << done << ',' << a.seed << '\n';
    }
  }
  emit(csv.str(), a.out);
  return any_timeout ? kTimeout : kOk;
}

// --- compile ---------------------------------------------------------------

struct CompileArgs {
  std::string graph, method = "lr-synth-hybrid", objective = "depth", out;
  unsigned qubits = 8, layers = 8;
  bool square = false;
  std::uint64_t seed = 0;
  double block_time_limit = 10.0;
  Common common;
};

int run_compile(const CompileArgs& a) {
  const auto g = ps::parse_graph(a.graph);
  ps::PipelineOptions po;
  po.qubits = a.qubits;
  po.layers = a.square ? a.qubits : a.layers;
  po.seed = a.seed;
  po.method = ps::parse_method(a.method);
  po.objective = ps::parse_objective(a.objective);
  po.resynth.method.exact = a.common.exact();
  po.resynth.block_time_limit = a.block_time_limit;
  po.resynth.workers = a.common.worker_count();
  const auto r = ps::compile_pipeline(g, po);
  const bool preserved = ps::same_action(r.routed, r.final_circuit);
  auto j = ps::report_to_json(r.report);
  j["semantics_preserved"] = preserved;
  emit(j.dump(2) + "\n", a.out);
  if (!preserved) {
    std::cerr << "internal error: compiled circuit differs from the routed circuit\n";
    return kInvalid;
  }
  const bool timeouts = std::any_of(r.report.blocks.begin(), r.report.blocks.end(),
                                    [](const ps::BlockRecord& b) { return b.timed_out; });
  return timeouts ? kTimeout : kOk;
}

// --- verify ----------------------------------------------------------------

struct VerifyArgs {
  std::string circuit, graph, perm;
};

int run_verify(const VerifyArgs& a) {
  const auto g = ps::parse_graph(a.graph);
  const auto p = parse_perm(a.perm, g.size());
  std::ifstream in(a.circuit);
  if (!in) throw ps::InvalidInput("cannot read '" + a.circuit + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ps::InvalidInput(std::string("malformed circuit JSON: ") + e.what());
  }
  // Accept both a bare circuit and the output of `synth`.
  const auto& cj = j.contains("circuit") ? j["circuit"] : j;
  ps::Circuit c;
  try {
    c = ps::circuit_from_json(cj);
  } catch (const nlohmann::json::exception& e) {
    throw ps::InvalidInput(std::string("malformed circuit JSON: ") + e.what());
  }
  const auto v = ps::verify(c, g, p);
  if (!v) {
    std::cout << "FAIL " << ps::verify_status_name(v.status) << ": " << v.detail << "\n";
    return kInvalid;
  }
  std::cout << "OK size " << c.size() << " depth " << c.depth() << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Permutation synthesis for limited-connectivity qubit layouts"};
  app.require_subcommand(1);

  const std::vector<std::string> method_names = {"cnot-opt", "swap-opt",        "rowcol",
                                                 "rowcol-hybrid", "lr-synth", "lr-synth-hybrid",
                                                 "odd-even"};

  SynthArgs sa;
  auto* synth = app.add_subcommand("synth", "Synthesise one permutation");
  synth->add_option("--graph", sa.graph, "path:n, ring:n, grid:WxH, tree:<file>, edges:<file>")
      ->required();
  synth->add_option("--perm", sa.perm, "csv, reversal, identity or random:seed")->required();
  synth->add_option("--method", sa.method)->required()->check(CLI::IsMember(method_names));
  synth->add_option("--objective", sa.objective)->check(CLI::IsMember({"size", "depth"}));
  synth->add_option("--samples", sa.samples, "LR-Synth partitions per split");
  synth->add_option("--order", sa.order, "ROWCOL order: fixed:list, exhaustive, sample:k[:seed]");
  synth->add_option("--format", sa.format)->check(CLI::IsMember({"json", "text"}));
  synth->add_option("--out", sa.out);
  add_solver_flags(synth, sa.common);

  SweepArgs wa;
  auto* sweep = app.add_subcommand("sweep", "Exact optimum of many permutations, as CSV");
  sweep->add_option("--graph", wa.graph)->required();
  sweep->add_option("--method", wa.method)->check(CLI::IsMember({"cnot-opt", "swap-opt"}));
  sweep->add_option("--objective", wa.objective)->check(CLI::IsMember({"size", "depth"}));
  sweep->add_option("--enumerate", wa.enumerate, "all or random:k:seed");
  sweep->add_option("--out", wa.out);
  sweep->add_option("--workers", wa.common.workers, "0 = all cores");
  add_solver_flags(sweep, wa.common);

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Mean size/depth/runtime per topology size, as CSV");
  bench->add_option("--topology", ba.topology)
      ->check(CLI::IsMember({"path", "ring", "tree", "grid"}));
  bench->add_option("--sizes", ba.sizes, "lo..hi or a comma list");
  bench->add_option("--count", ba.count, "Permutations per size");
  bench->add_option("--methods", ba.methods, "Comma-separated method names");
  bench->add_option("--objective", ba.objective)->check(CLI::IsMember({"size", "depth"}));
  bench->add_option("--seed", ba.seed);
  bench->add_option("--out", ba.out);
  bench->add_option("--workers", ba.common.workers, "0 = all cores");
  add_solver_flags(bench, ba.common);

  CompileArgs ca;
  auto* compile = app.add_subcommand("compile", "Route a random QV circuit and resynthesise SWAP blocks");
  compile->add_option("--graph", ca.graph)->required();
  compile->add_option("--qubits", ca.qubits);
  compile->add_option("--layers", ca.layers);
  compile->add_flag("--square", ca.square, "layers = qubits");
  compile->add_option("--method", ca.method)->check(CLI::IsMember(method_names));
  compile->add_option("--objective", ca.objective)->check(CLI::IsMember({"size", "depth"}));
  compile->add_option("--seed", ca.seed);
  compile->add_option("--block-time-limit", ca.block_time_limit, "Seconds per block");
  compile->add_option("--out", ca.out);
  compile->add_option("--workers", ca.common.workers, "0 = all cores");
  add_solver_flags(compile, ca.common);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check a circuit against a graph and permutation");
  verify->add_option("--circuit", va.circuit)->required();
  verify->add_option("--graph", va.graph)->required();
  verify->add_option("--perm", va.perm)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  try {
    if (*synth) return run_synth(sa);
    if (*sweep) return run_sweep(wa);
    if (*bench) return run_bench(ba);
    if (*compile) return run_compile(ca);
    if (*verify) return run_verify(va);
  } catch (const ps::InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const ps::SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kInvalid;
  } catch (const ps::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}
