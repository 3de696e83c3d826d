// Copyright 2026 The hqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hqc/solvers.hpp"

#include <algorithm>
#include <numeric>

namespace hqc {

namespace {

std::vector<int> concat(std::vector<int> a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::vector<int> head(const std::vector<int>& v, int k) { return {v.begin(), v.begin() + k}; }

Stage empty_unitary() { return stage::unitary(GateLayer{}, "U0"); }
Stage empty_oracle() { return stage::oracle(std::vector<Slot>{}, "O0"); }

void add_x_gates(GateLayer& layer, const std::vector<int>& qubits, std::uint64_t value) {
  for (std::size_t j = 0; j < qubits.size(); ++j)
    if (value >> j & 1u) layer.gates.push_back(gates::X(qubits[j]));
}

// Moves measured rows out of values[key] into lists["rows"] and lists["all_rows"];
// an empty qubit list keeps already packed outcomes.
void take_rows(ClassicalMemory& mem, const std::string& key, const std::vector<int>& qubits) {
  auto it = mem.values.find(key);
  if (it == mem.values.end()) return;
  auto& rows = mem.lists["rows"];
  auto& all = mem.lists["all_rows"];
  for (auto o : it->second) {
    const auto w = qubits.empty() ? o : gather_bits(o, qubits);
    rows.push_back(w);
    all.push_back(w);
  }
  mem.values.erase(it);
}

// Bookkeeping after an unsuccessful batch: retry or give up.
void next_batch(ClassicalContext& ctx, const Gf2Solution& sol, const std::string& where) {
  auto& mem = ctx.mem();
  if (sol.status == Gf2Status::Inconsistent) {
    ctx.fail("inconsistent rows " + where);
    ctx.halt();
    return;
  }
  if (++mem.scalars["batch"] >= kBatchesPerLevel) {
    ctx.fail("rank-deficient after retry budget " + where);
    ctx.halt();
  }
}

Stage exhausted_check() {
  return stage::classical(
      [](ClassicalContext& ctx) {
        if (!ctx.mem().output && ctx.mem().failure.empty()) ctx.fail("round budget exhausted");
      },
      "A_final");
}

SolverReport start_report(const std::string& name, const HybridProgram& p) {
  SolverReport r;
  r.solver = name;
  r.model = p.model;
  r.budget = p.depth;
  const auto v = validate(p);
  r.validated = v.ok;
  if (!v.ok) {
    r.violation = v.kind;
    r.failure = "validation: " + v.kind;
  }
  return r;
}

void finish_report(SolverReport& r, const HybridProgram& p, RunResult res) {
  r.answer = res.output;
  r.failure = res.failure;
  if (!r.answer && r.failure.empty()) r.failure = "no output";
  r.rounds = res.rounds_used;
  r.depth = p.model == Model::QC ? validate(p).depth_used : res.depth_used;
  r.oracle_layers = res.oracle_layers;
  r.quantum_queries = res.ledger.total_quantum;
  r.classical_queries = res.ledger.classical.size();
  if (auto it = res.memory.lists.find("all_rows"); it != res.memory.lists.end()) r.rows = it->second;
  r.transcript = std::move(res.transcript);
  r.ledger = std::move(res.ledger);
}

SolverReport execute(const std::string& name, const HybridProgram& p, const OracleAccess& access, Rng& rng) {
  auto report = start_report(name, p);
  if (!report.validated) return report;
  finish_report(report, p, run(p, access, rng));
  return report;
}

// Classical Simon check f(0) == f(s) through the port; `eval` maps an
// n-bit x to an oracle answer.
template <class F>
bool period_holds(F&& eval, std::uint64_t s) {
  const auto a = eval(0);
  return a != kBottom && a == eval(s);
}

}  // namespace

// ---------------------------------------------------------------- Simon core

std::vector<Stage> simon_round(const std::vector<int>& x, const std::vector<int>& query,
                               const std::vector<int>& response, int sub, LayerFn prepare) {
  std::vector<Stage> out;
  if (prepare) {
    out.push_back(stage::unitary(
        LayerFn([x, prepare](const StageInput& in) {
          GateLayer layer = prepare(in);
          for (int q : x) layer.gates.push_back(gates::H(q));
          return layer;
        }),
        "U_H"));
  } else {
    out.push_back(stage::unitary(hadamard_layer(x), "U_H"));
  }
  out.push_back(stage::oracle(std::vector<Slot>{Slot{sub, query, response, -1}}, "O_f"));
  out.push_back(stage::unitary(hadamard_layer(x), "U_H"));
  return out;
}

HybridProgram simon_program(int n, int tracks) {
  HybridProgram p;
  p.name = "simon";
  p.model = Model::QNC;
  p.depth = 1;
  p.tracks = tracks;
  p.layout.add("Q", n);
  p.layout.add("R", n + 1);
  p.stages = simon_round(p.layout.qubits("Q"), p.layout.qubits("Q"), p.layout.qubits("R"), 0);
  p.stages.push_back(stage::measure(p.layout.qubits("Q"), "w"));
  return p;
}

SolverReport solve_simon_qnc(const SimonInstance& inst, Rng& rng, int budget) {
  auto p = simon_program(inst.n, 3 * inst.n);
  if (budget >= 0) p.depth = budget;
  auto report = start_report("simon-qnc1", p);
  if (!report.validated) return report;
  const OracleBundle bundle{"simon", {inst.table}};
  for (int batch = 0; batch < kBatchesPerLevel && !report.answer; ++batch) {
    auto res = run(p, {&bundle, nullptr}, rng);
    const auto& w = res.memory.values.at("w");
    report.rows.insert(report.rows.end(), w.begin(), w.end());
    report.rounds += 1;
    report.depth = std::max(report.depth, res.depth_used);
    report.oracle_layers += res.oracle_layers;
    report.quantum_queries += res.ledger.total_quantum;
    const auto sol = gf2_nullspace(LinearSystemGF2{inst.n, w});
    if (sol.status != Gf2Status::Unique) continue;
    report.classical_queries += 2;
    if (period_holds([&](std::uint64_t x) { return classical_query(bundle, 0, x); }, sol.s)) report.answer = sol.s;
  }
  report.failure = report.answer ? "" : "rank-deficient after retry budget";
  return report;
}

// ---------------------------------------------------------------- serial, CQ_1

HybridProgram serial_cq1_program(int c, int n) {
  HybridProgram p;
  p.name = "serial-cq1";
  p.model = Model::CQ;
  p.depth = 1;
  p.rounds = (c + 1) * kBatchesPerLevel;
  p.tracks = 3 * n;
  p.layout.add("Z", n);
  p.layout.add("X", n);
  p.layout.add("R", n + 1);
  const auto zq = p.layout.qubits("Z");
  const auto xq = p.layout.qubits("X");
  const auto rq = p.layout.qubits("R");

  auto step = [c, n, xq](ClassicalContext& ctx) {
    auto& mem = ctx.mem();
    auto& keys = mem.lists["keys"];
    if (mem.values.count("w")) {
      take_rows(mem, "w", xq);
      const int level = static_cast<int>(mem.scalar("level"));
      const std::uint64_t z = level == 0 ? 0 : keys.back();
      const auto sol = gf2_nullspace({n, mem.lists["rows"]});
      const bool ok = sol.status == Gf2Status::Unique &&
                      period_holds([&](std::uint64_t x) { return ctx.query(level, pack_pair(x, z, n)); }, sol.s);
      if (ok) {
        keys.push_back(sol.s);
        mem.lists["rows"].clear();
        mem.scalars["batch"] = 0;
        mem.scalars["level"] = level + 1;
        if (level == c) {
          ctx.output(sol.s);
          ctx.halt();
          return;
        }
      } else {
        next_batch(ctx, sol, "at level " + std::to_string(level));
        if (mem.halted) return;
      }
    }
    mem.scalars["z"] = keys.empty() ? 0 : keys.back();
  };

  p.stages.push_back(stage::classical(step, "A_gf2"));
  auto round = simon_round(xq, concat(zq, xq), rq, 0, [zq](const StageInput& in) {
    GateLayer layer;
    add_x_gates(layer, zq, in.mem.scalar("z"));
    return layer;
  });
  round[1] = stage::oracle(
      SlotFn([zq, xq, rq](const StageInput& in) {
        return std::vector<Slot>{Slot{static_cast<int>(in.mem.scalar("level")), concat(zq, xq), rq, -1}};
      }),
      "O_L");
  p.stages.insert(p.stages.end(), round.begin(), round.end());
  p.stages.push_back(stage::measure_all("w"));
  p.epilogue.push_back(stage::classical(step, "A_gf2"));
  p.epilogue.push_back(exhausted_check());
  return p;
}

SolverReport solve_serial_cq1(const SerialInstance& inst, Rng& rng, int budget) {
  auto p = serial_cq1_program(inst.c, inst.n);
  if (budget >= 0) p.depth = budget;
  const auto bundle = inst.bundle();
  return execute("serial-cq1", p, {&bundle, nullptr}, rng);
}

// ---------------------------------------------------------------- serial, QC_{2c+2}

HybridProgram serial_qc_program(int c, int n, Variant variant) {
  HybridProgram p;
  p.name = variant == Variant::Search ? "serial-qc" : "serial-qc-decision";
  p.model = Model::QC;
  p.depth = 2 * c + 2;
  p.tracks = 3 * n;
  p.layout.add("X", n);
  p.layout.add("Z", n);
  for (int i = 0; i <= c; ++i) p.layout.add("R" + std::to_string(i), n + 1);
  const auto xq = p.layout.qubits("X");
  const auto zq = p.layout.qubits("Z");

  // Solves the level measured last; level == c is the terminal level.
  std::vector<int> packed(n);
  std::iota(packed.begin(), packed.end(), 0);
  auto solve_level = [c, n, packed, variant](ClassicalContext& ctx, int level) {
    auto& mem = ctx.mem();
    auto& keys = mem.lists["keys"];
    mem.lists["rows"].clear();
    take_rows(mem, "w", packed);
    auto& last = mem.values["w_last"];
    last = mem.lists["rows"];
    const std::uint64_t z = level == 0 ? 0 : keys.back();
    const auto sol = gf2_nullspace({n, mem.lists["rows"]});
    const bool ok = sol.status == Gf2Status::Unique &&
                    period_holds([&](std::uint64_t x) { return ctx.query(level, pack_pair(x, z, n)); }, sol.s);
    if (level == c && variant == Variant::Decision) {
      ctx.output(sol.status == Gf2Status::RankDeficient ? 0 : (ok ? 0 : 1));
      ctx.halt();
      return;
    }
    if (!ok) {
      ctx.fail((sol.status == Gf2Status::Unique ? std::string("unverified key") : std::string(to_string(sol.status))) +
               " at level " + std::to_string(level));
      ctx.halt();
      return;
    }
    keys.push_back(sol.s);
    if (level == c) {
      ctx.output(sol.s);
      ctx.halt();
    }
  };

  for (int i = 0; i <= c; ++i) {
    const auto rq = p.layout.qubits("R" + std::to_string(i));
    if (i > 0) p.stages.push_back(stage::classical([solve_level, i](ClassicalContext& ctx) { solve_level(ctx, i - 1); }, "A_gf2"));
    p.stages.push_back(stage::unitary(
        LayerFn([i, xq, zq](const StageInput& in) {
          GateLayer layer;
          std::uint64_t w = 0;
          if (i > 0) w = in.mem.values.at("w_last").at(in.track);
          for (std::size_t j = 0; j < xq.size(); ++j)
            layer.gates.push_back(w >> j & 1u ? gates::then(gates::X(xq[j]), gates::H(xq[j])) : gates::H(xq[j]));
          const auto it = in.mem.lists.find("keys");
          const std::vector<std::uint64_t> none;
          const auto& keys = it == in.mem.lists.end() ? none : it->second;
          const std::uint64_t now = i == 0 ? 0 : keys.at(i - 1);
          const std::uint64_t before = i <= 1 ? 0 : keys.at(i - 2);
          add_x_gates(layer, zq, now ^ before);
          return layer;
        }),
        "U_prep"));
    p.stages.push_back(stage::oracle(std::vector<Slot>{Slot{i, concat(zq, xq), rq, -1}}, "O_L"));
    p.stages.push_back(stage::unitary(hadamard_layer(xq), "U_H"));
    p.stages.push_back(empty_oracle());
    p.stages.push_back(stage::measure(concat(xq, rq), "w"));
  }
  p.stages.push_back(stage::classical([solve_level, c](ClassicalContext& ctx) { solve_level(ctx, c); }, "A_gf2"));
  return p;
}

SolverReport solve_serial_qc(const SerialInstance& inst, Rng& rng, int budget) {
  auto p = serial_qc_program(inst.c, inst.n, inst.variant);
  if (budget >= 0) p.depth = budget;
  const auto bundle = inst.bundle();
  return execute(p.name, p, {&bundle, nullptr}, rng);
}

// ---------------------------------------------------------------- d-SS, CQ

HybridProgram ss_cq_program(int d, int n, int budget) {
  HybridProgram p;
  p.name = "ss-cq";
  p.model = Model::CQ;
  p.depth = budget >= 0 ? budget : 2 * d + 1;
  p.rounds = kBatchesPerLevel;
  p.tracks = 3 * n;
  p.layout.add("Q", 2 * n);
  for (int k = 1; k <= d + 1; ++k) p.layout.add("R" + std::to_string(k), 2 * n + 1);
  const auto qq = p.layout.qubits("Q");
  const auto xq = head(qq, n);
  auto payload = [&](int k) { return head(p.layout.qubits("R" + std::to_string(k)), 2 * n); };
  auto input = [&](int k) { return k == 0 ? qq : payload(k); };

  auto step = [d, n, xq](ClassicalContext& ctx) {
    auto& mem = ctx.mem();
    if (!mem.values.count("w")) return;
    take_rows(mem, "w", xq);
    const auto sol = gf2_nullspace({n, mem.lists["rows"]});
    const bool ok = sol.status == Gf2Status::Unique && period_holds(
                                                           [&](std::uint64_t x) {
                                                             std::uint64_t v = x;
                                                             for (int i = 0; i <= d && v != kBottom; ++i)
                                                               v = ctx.query(i, v);
                                                             return v;
                                                           },
                                                           sol.s);
    if (ok) {
      ctx.output(sol.s);
      ctx.halt();
      return;
    }
    next_batch(ctx, sol, "");
  };

  p.stages.push_back(stage::classical(step, "A_gf2"));
  p.stages.push_back(stage::unitary(hadamard_layer(xq), "U_H"));
  for (int k = 0; k <= d; ++k) {
    if (k > 0) p.stages.push_back(empty_unitary());
    const auto rq = p.layout.qubits("R" + std::to_string(k + 1));
    p.stages.push_back(stage::oracle(std::vector<Slot>{Slot{k, input(k), rq, -1}}, "O_f" + std::to_string(k)));
  }
  for (int k = d - 1; k >= 0; --k) {
    p.stages.push_back(empty_unitary());
    const auto rq = p.layout.qubits("R" + std::to_string(k + 1));
    p.stages.push_back(stage::oracle(std::vector<Slot>{Slot{k, input(k), rq, -1}}, "O_f" + std::to_string(k) + "^-1"));
  }
  p.stages.push_back(stage::unitary(hadamard_layer(xq), "U_H"));
  p.stages.push_back(stage::measure_all("w"));
  p.epilogue.push_back(stage::classical(step, "A_gf2"));
  p.epilogue.push_back(exhausted_check());
  return p;
}

SolverReport solve_ss_cq(const SSInstance& inst, Rng& rng, int budget) {
  const auto p = ss_cq_program(inst.shuffler.d, inst.shuffler.n, budget);
  const auto bundle = inst.shuffler.bundle();
  return execute("ss-cq", p, {&bundle, nullptr}, rng);
}

// ---------------------------------------------------------------- d-SCS

namespace {

// Rows (w | b << n) are orthogonal to (s | 1 << n).
bool scs_key(ClassicalContext& ctx, int n, const Gf2Solution& sol) {
  if (sol.status != Gf2Status::Unique || !(sol.s >> n & 1u)) return false;
  ctx.output(sol.s & low_mask(n));
  ctx.halt();
  return true;
}

}  // namespace

HybridProgram scs_qc4_program(int d, int n) {
  HybridProgram p;
  p.name = "scs-qc4";
  p.model = Model::QC;
  p.depth = 4;
  p.tracks = 3 * n;
  p.layout.add("B", 1);
  p.layout.add("X", n + 1);
  p.layout.add("Y", n);
  p.layout.add("K", n);
  p.layout.add("P", n + 1);
  const int b = p.layout.qubit("B", 0);
  const auto xq = p.layout.qubits("X");
  const auto yq = p.layout.qubits("Y");
  const auto kq = p.layout.qubits("K");
  const auto pq = p.layout.qubits("P");
  const auto xp = head(xq, n);
  const auto pp = head(pq, n);

  p.stages.push_back(stage::unitary(hadamard_layer({b}), "U_H"));
  p.stages.push_back(stage::oracle(std::vector<Slot>{Slot{kStochasticSub, {b}, concat(xp, yq), -1}}, "O_coll"));
  p.stages.push_back(stage::measure(yq, "y"));
  p.stages.push_back(stage::classical(
      [d](ClassicalContext& ctx) {
        auto& mem = ctx.mem();
        auto& h = mem.values["h"];
        h.clear();
        for (auto y : mem.values.at("y")) {
          std::vector<std::uint64_t> path{y};
          std::uint64_t v = y;
          for (int i = 0; i <= d; ++i) {
            v = ctx.query(i, v);
            if (v == kBottom) throw Error(ErrorKind::Solver, "shuffler walk returned bottom");
            path.push_back(v);
          }
          ctx.transcript().current().revealed_paths.push_back(std::move(path));
          h.push_back(v);
        }
      },
      "A_walk"));
  p.stages.push_back(stage::unitary(
      LayerFn([kq](const StageInput& in) {
        GateLayer layer;
        add_x_gates(layer, kq, in.mem.values.at("h").at(in.track));
        return layer;
      }),
      "U_h"));
  p.stages.push_back(stage::oracle(std::vector<Slot>{Slot{d + 1, concat(xp, kq), pq, -1}}, "O_p'"));
  p.stages.push_back(empty_unitary());
  p.stages.push_back(stage::oracle(std::vector<Slot>{Slot{d + 2, concat(pp, kq), xq, -1}}, "O_p'inv"));
  p.stages.push_back(stage::unitary(hadamard_layer(concat({b}, pp)), "U_H"));
  p.stages.push_back(empty_oracle());
  p.stages.push_back(stage::measure(concat(pp, {b}), "w"));
  p.stages.push_back(stage::classical(
      [n](ClassicalContext& ctx) {
        auto& mem = ctx.mem();
        const auto& w = mem.values.at("w");
        mem.lists["all_rows"] = w;
        const auto sol = gf2_nullspace({n + 1, w});
        if (!scs_key(ctx, n, sol)) {
          ctx.fail(std::string(to_string(sol.status)) + " rows");
          ctx.halt();
        }
      },
      "A_gf2"));
  return p;
}

SolverReport solve_scs_qc4(const SCSInstance& inst, Rng& rng, int budget) {
  auto p = scs_qc4_program(inst.d, inst.n);
  if (budget >= 0) p.depth = budget;
  const auto bundle = inst.bundle();
  return execute("scs-qc4", p, {&bundle, &inst.stochastic}, rng);
}

HybridProgram scs_cq_program(int d, int n, int budget) {
  const int qubits = 1 + (n + 1) + 2 * n + n + (d + 1) * (2 * n + 1) + (n + 1);
  if (qubits > kMaxQubits)
    throw Error(ErrorKind::Unsupported, "CQ d-SCS layout needs " + std::to_string(qubits) + " qubits per track");
  HybridProgram p;
  p.name = "scs-cq";
  p.model = Model::CQ;
  p.depth = budget >= 0 ? budget : d + 6;
  p.rounds = kBatchesPerLevel;
  p.tracks = 3 * n;
  p.layout.add("B", 1);
  p.layout.add("X", n + 1);
  p.layout.add("Y", n);
  p.layout.add("YZ", n);
  for (int k = 1; k <= d + 1; ++k) p.layout.add("R" + std::to_string(k), 2 * n + 1);
  p.layout.add("P", n + 1);
  const int b = p.layout.qubit("B", 0);
  const auto xq = p.layout.qubits("X");
  const auto pq = p.layout.qubits("P");
  const auto xp = head(xq, n);
  const auto pp = head(pq, n);
  const auto yy = concat(p.layout.qubits("Y"), p.layout.qubits("YZ"));
  const auto hq = head(p.layout.qubits("R" + std::to_string(d + 1)), n);
  const auto wq = concat(pp, {b});

  auto step = [n, wq](ClassicalContext& ctx) {
    auto& mem = ctx.mem();
    if (!mem.values.count("w")) return;
    take_rows(mem, "w", wq);
    const auto sol = gf2_nullspace({n + 1, mem.lists["rows"]});
    if (scs_key(ctx, n, sol)) return;
    next_batch(ctx, sol, "");
  };

  p.stages.push_back(stage::classical(step, "A_gf2"));
  p.stages.push_back(stage::unitary(hadamard_layer({b}), "U_H"));
  p.stages.push_back(
      stage::oracle(std::vector<Slot>{Slot{kStochasticSub, {b}, concat(xp, p.layout.qubits("Y")), -1}}, "O_coll"));
  for (int k = 0; k <= d; ++k) {
    const auto in = k == 0 ? yy : head(p.layout.qubits("R" + std::to_string(k)), 2 * n);
    p.stages.push_back(empty_unitary());
    p.stages.push_back(stage::oracle(
        std::vector<Slot>{Slot{k, in, p.layout.qubits("R" + std::to_string(k + 1)), -1}}, "O_f" + std::to_string(k)));
  }
  p.stages.push_back(empty_unitary());
  p.stages.push_back(stage::oracle(std::vector<Slot>{Slot{d + 1, concat(xp, hq), pq, -1}}, "O_p'"));
  p.stages.push_back(empty_unitary());
  p.stages.push_back(stage::oracle(std::vector<Slot>{Slot{d + 2, concat(pp, hq), xq, -1}}, "O_p'inv"));
  p.stages.push_back(stage::unitary(hadamard_layer(concat({b}, pp)), "U_H"));
  p.stages.push_back(stage::measure_all("w"));
  p.epilogue.push_back(stage::classical(step, "A_gf2"));
  p.epilogue.push_back(exhausted_check());
  return p;
}

SolverReport solve_scs_cq(const SCSInstance& inst, Rng& rng, int budget) {
  const auto p = scs_cq_program(inst.d, inst.n, budget);
  const auto bundle = inst.bundle();
  return execute("scs-cq", p, {&bundle, &inst.stochastic}, rng);
}

}  // namespace hqc
