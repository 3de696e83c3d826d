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

#include "hqc/models.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace hqc {

const char* to_string(Model m) {
  switch (m) {
    case Model::QNC: return "QNC";
    case Model::QC: return "QC";
    case Model::CQ: return "CQ";
  }
  return "?";
}

const char* to_string(StageKind k) {
  switch (k) {
    case StageKind::Classical: return "A";
    case StageKind::Unitary: return "U";
    case StageKind::Oracle: return "O";
    case StageKind::Measure: return "M";
    case StageKind::MeasureAll: return "M*";
  }
  return "?";
}

TranscriptRound& Transcript::open(int round) {
  rounds.push_back({});
  rounds.back().round = round;
  return rounds.back();
}

TranscriptRound& Transcript::current() {
  if (rounds.empty()) open(0);
  return rounds.back();
}

std::uint64_t ClassicalContext::query(int sub, std::uint64_t x) {
  if (!bundle_) throw Error(ErrorKind::Precondition, "no classical oracle attached");
  const std::uint64_t v = classical_query(*bundle_, sub, x, &ledger_);
  if (v == kBottom) tr_.current().bottom_queries.emplace_back(sub, x);
  return v;
}

StochasticAnswer ClassicalContext::stochastic(std::uint64_t b) {
  if (!stochastic_) throw Error(ErrorKind::Precondition, "no stochastic oracle attached");
  return stochastic_classical(*stochastic_, b, rng_, &ledger_);
}

namespace stage {

Stage unitary(GateLayer layer, std::string label) {
  Stage s;
  s.kind = StageKind::Unitary;
  s.label = std::move(label);
  s.layer = [layer = std::move(layer)](const StageInput&) { return layer; };
  return s;
}

Stage unitary(LayerFn fn, std::string label) {
  Stage s;
  s.kind = StageKind::Unitary;
  s.label = std::move(label);
  s.layer = std::move(fn);
  s.dynamic = true;
  return s;
}

Stage oracle(std::vector<Slot> slots, std::string label) {
  Stage s;
  s.kind = StageKind::Oracle;
  s.label = std::move(label);
  s.slots = [slots = std::move(slots)](const StageInput&) { return slots; };
  return s;
}

Stage oracle(SlotFn fn, std::string label) {
  Stage s;
  s.kind = StageKind::Oracle;
  s.label = std::move(label);
  s.slots = std::move(fn);
  s.dynamic = true;
  return s;
}

Stage flagged_oracle(std::vector<Slot> slots, ShadowMask mask, std::string label) {
  Stage s = oracle(std::move(slots), std::move(label));
  s.mode = OracleMode::Flagged;
  s.mask = std::move(mask);
  return s;
}

Stage measure(std::vector<int> qubits, std::string key) {
  Stage s;
  s.kind = StageKind::Measure;
  s.label = "M";
  s.qubits = std::move(qubits);
  s.key = std::move(key);
  return s;
}

Stage measure_all(std::string key) {
  Stage s;
  s.kind = StageKind::MeasureAll;
  s.label = "M*";
  s.key = std::move(key);
  return s;
}

Stage classical(ClassicalFn fn, std::string label) {
  Stage s;
  s.kind = StageKind::Classical;
  s.label = std::move(label);
  s.classical = std::move(fn);
  return s;
}

}  // namespace stage

// ---------------------------------------------------------------- validation

namespace {

ValidationReport violation(const std::string& kind, int stage, const std::string& message) {
  ValidationReport r;
  r.ok = false;
  r.kind = kind;
  r.stage = stage;
  r.message = message;
  return r;
}

std::optional<ValidationReport> check_static(const HybridProgram& p, const Stage& s, int idx) {
  const int nq = p.layout.num_qubits();
  if (s.kind == StageKind::Classical && s.coherent)
    return violation("coherent-classical-call", idx, "classical subroutine invoked on live amplitudes");
  if (s.kind == StageKind::Oracle && s.mode == OracleMode::Flagged && !p.layout.has("flag"))
    return violation("missing-flag", idx, "flagged oracle layer without a 'flag' register");
  if (s.kind == StageKind::Measure)
    for (int q : s.qubits)
      if (q < 0 || q >= nq) return violation("range", idx, "measured qubit out of range");
  if (s.dynamic) return std::nullopt;
  const ClassicalMemory empty;
  for (int t = 0; t < std::min(p.tracks, 2); ++t) {
    const StageInput in{t, empty};
    if (s.kind == StageKind::Unitary && s.layer) {
      try {
        check_layer(s.layer(in), nq);
      } catch (const Error& e) {
        return violation(e.kind() == ErrorKind::Range ? "range" : "layer-invalid", idx, e.what());
      }
    }
    if (s.kind == StageKind::Oracle && s.slots) {
      std::uint64_t used = 0;
      int flag = p.layout.has("flag") ? p.layout.get("flag").offset : -1;
      for (const auto& slot : s.slots(in)) {
        std::vector<int> qs = slot.query;
        qs.insert(qs.end(), slot.response.begin(), slot.response.end());
        if (slot.query_flag >= 0) qs.push_back(slot.query_flag);
        for (int q : qs) {
          if (q < 0 || q >= nq) return violation("range", idx, "slot qubit out of range");
          const std::uint64_t m = std::uint64_t{1} << q;
          if (used & m) return violation("register-overlap", idx, "slot registers overlap");
          if (s.mode == OracleMode::Flagged && q == flag)
            return violation("register-overlap", idx, "slot uses the flag qubit");
          used |= m;
        }
      }
    }
  }
  return std::nullopt;
}

bool is_quantum(StageKind k) { return k != StageKind::Classical; }

ValidationReport validate_qnc(const HybridProgram& p) {
  const auto& st = p.stages;
  int oracles = 0;
  bool measured = false;
  bool quantum_seen = false;
  std::optional<StageKind> prev;
  for (int i = 0; i < static_cast<int>(st.size()); ++i) {
    const auto k = st[i].kind;
    if (measured && is_quantum(k) && k != StageKind::Measure && k != StageKind::MeasureAll)
      return violation("mid-circuit-measurement", i, "QNC circuits measure only at the end");
    switch (k) {
      case StageKind::Classical: {
        const bool later_quantum =
            std::any_of(st.begin() + i + 1, st.end(), [](const Stage& s) { return is_quantum(s.kind); });
        if (quantum_seen && later_quantum && !measured)
          return violation("coherent-classical-call", i, "classical subroutine inside a QNC circuit");
        break;
      }
      case StageKind::Unitary:
        if (prev == StageKind::Unitary)
          return violation("extra-unitary", i, "two unitary layers without an oracle call between them");
        quantum_seen = true;
        break;
      case StageKind::Oracle:
        if (prev != StageKind::Unitary) return violation("malformed", i, "oracle call must follow a unitary layer");
        if (++oracles > p.depth) return violation("depth-exceeded", i, "more oracle layers than the depth budget");
        break;
      case StageKind::Measure:
      case StageKind::MeasureAll:
        measured = true;
        break;
    }
    prev = k;
  }
  ValidationReport r;
  r.depth_used = oracles;
  return r;
}

ValidationReport validate_qc(const HybridProgram& p) {
  const auto& st = p.stages;
  int blocks = 0;
  std::optional<StageKind> prev;
  int last_unitary = -1;
  for (int i = 0; i < static_cast<int>(st.size()); ++i) {
    const auto k = st[i].kind;
    switch (k) {
      case StageKind::Classical:
        if (prev == StageKind::Unitary)
          return violation("coherent-classical-call", i, "classical subroutine between a unitary and its oracle");
        break;
      case StageKind::Unitary:
        if (prev == StageKind::Unitary)
          return violation("trailing-unitary", last_unitary, "unitary layer not followed by an oracle call");
        last_unitary = i;
        break;
      case StageKind::Oracle:
        if (prev != StageKind::Unitary) return violation("malformed", i, "oracle call must follow a unitary layer");
        if (++blocks > p.depth) return violation("depth-exceeded", i, "more layers than the depth budget");
        break;
      case StageKind::Measure:
      case StageKind::MeasureAll:
        if (prev == StageKind::Unitary)
          return violation("trailing-unitary", last_unitary, "unitary layer after the last oracle call of a block");
        break;
    }
    prev = k;
  }
  if (prev == StageKind::Unitary)
    return violation("trailing-unitary", last_unitary, "circuit ends with an unpaired unitary layer");
  ValidationReport r;
  r.depth_used = blocks;
  return r;
}

ValidationReport validate_cq(const HybridProgram& p) {
  const auto& st = p.stages;
  if (p.rounds < 1) return violation("malformed", -1, "CQ programs need at least one round");
  int oracles = 0;
  bool started = false;
  bool closed = false;
  std::optional<StageKind> prev;
  for (int i = 0; i < static_cast<int>(st.size()); ++i) {
    const auto k = st[i].kind;
    if (closed && is_quantum(k)) return violation("malformed", i, "round continues after the full measurement");
    switch (k) {
      case StageKind::Classical:
        if (started && !closed)
          return violation("coherent-classical-call", i, "classical subroutine inside a quantum round");
        break;
      case StageKind::Measure:
        return violation("cq-partial-measurement", i, "CQ rounds end by measuring every qubit");
      case StageKind::Unitary:
        if (prev == StageKind::Unitary)
          return violation("extra-unitary", i, "two unitary layers without an oracle call between them");
        started = true;
        break;
      case StageKind::Oracle:
        if (prev != StageKind::Unitary) return violation("malformed", i, "oracle call must follow a unitary layer");
        if (++oracles > p.depth) return violation("depth-exceeded", i, "more oracle layers than the depth budget");
        break;
      case StageKind::MeasureAll:
        closed = true;
        break;
    }
    prev = k;
  }
  if (started && !closed)
    return violation("cq-unmeasured", static_cast<int>(st.size()) - 1, "round leaves unmeasured qubits");
  for (int i = 0; i < static_cast<int>(p.epilogue.size()); ++i)
    if (p.epilogue[i].kind != StageKind::Classical)
      return violation("malformed", static_cast<int>(st.size()) + i, "epilogue must be classical");
  ValidationReport r;
  r.depth_used = oracles;
  return r;
}

}  // namespace

ValidationReport validate(const HybridProgram& p) {
  if (!p.layout.disjoint()) return violation("register-overlap", -1, "register layout has overlapping ranges");
  if (p.tracks < 1) return violation("malformed", -1, "program needs at least one track");
  if (p.depth < 0) return violation("malformed", -1, "negative depth budget");
  for (int i = 0; i < static_cast<int>(p.stages.size()); ++i)
    if (auto v = check_static(p, p.stages[i], i)) return *v;
  for (int i = 0; i < static_cast<int>(p.epilogue.size()); ++i)
    if (auto v = check_static(p, p.epilogue[i], static_cast<int>(p.stages.size()) + i)) return *v;
  switch (p.model) {
    case Model::QNC: return validate_qnc(p);
    case Model::QC: return validate_qc(p);
    case Model::CQ: return validate_cq(p);
  }
  return violation("malformed", -1, "unknown model");
}

std::string describe(const HybridProgram& p) {
  std::ostringstream os;
  const auto rep = validate(p);
  os << "program " << (p.name.empty() ? "<unnamed>" : p.name) << " model=" << to_string(p.model)
     << " depth=" << p.depth << " tracks=" << p.tracks;
  if (p.model == Model::CQ) os << " rounds<=" << p.rounds;
  os << " qubits/track=" << p.layout.num_qubits() << "\n";
  for (const auto& r : p.layout.registers())
    os << "  reg " << r.name << " [" << r.offset << ", " << r.offset + r.width << ")\n";
  int oracle = 0;
  int layer = 0;
  auto list = [&](const std::vector<Stage>& stages, int base) {
    for (int i = 0; i < static_cast<int>(stages.size()); ++i) {
      const auto& s = stages[i];
      os << "  [" << base + i << "] " << to_string(s.kind) << " " << s.label;
      if (s.kind == StageKind::Unitary) os << "  (layer " << ++layer << ")";
      if (s.kind == StageKind::Oracle) os << "  (oracle " << ++oracle << (s.mode == OracleMode::Flagged ? ", flagged" : "") << ")";
      if (s.kind == StageKind::Measure) os << "  (" << s.qubits.size() << " qubits -> " << s.key << ")";
      if (s.kind == StageKind::MeasureAll) os << "  (all -> " << s.key << ")";
      if (s.dynamic) os << " dynamic";
      os << "\n";
    }
  };
  list(p.stages, 0);
  if (!p.epilogue.empty()) {
    os << "  epilogue:\n";
    list(p.epilogue, static_cast<int>(p.stages.size()));
  }
  os << "  validate: " << (rep.ok ? "ok" : rep.kind) << " depth_used=" << rep.depth_used << "\n";
  return os.str();
}

// ---------------------------------------------------------------- execution

RunResult run(const HybridProgram& p, const OracleAccess& access, Rng& rng, const RunOptions& opt) {
  const auto rep = validate(p);
  if (!rep.ok) throw Error(ErrorKind::Validation, rep.kind + ": " + rep.message);

  RunResult res;
  ClassicalMemory& mem = res.memory;
  std::vector<QuantumState> states;
  const int rounds = p.model == Model::CQ ? p.rounds : 1;
  bool stopped = false;

  auto run_classical = [&](const Stage& s, int round) {
    if (p.model == Model::CQ && !states.empty())
      res.live_qubits_at_classical =
          std::max(res.live_qubits_at_classical, p.layout.num_qubits() * static_cast<int>(states.size()));
    ClassicalContext ctx(mem, res.transcript, res.ledger, access.bundle, access.stochastic, rng, round, p.tracks);
    s.classical(ctx);
  };

  for (int r = 0; r < rounds && !mem.halted && !stopped; ++r) {
    res.transcript.open(r);
    // Tracks are allocated at the first quantum stage of the round.
    states.clear();
    int oracle_in_round = 0;
    for (const auto& s : p.stages) {
      if (mem.halted || stopped) break;
      if (s.kind != StageKind::Classical && states.empty()) states.assign(p.tracks, QuantumState(p.layout));
      switch (s.kind) {
        case StageKind::Classical:
          run_classical(s, r);
          break;
        case StageKind::Unitary:
          for (int t = 0; t < p.tracks; ++t) apply_layer_inplace(states[t], s.layer(StageInput{t, mem}));
          break;
        case StageKind::Oracle: {
          ++oracle_in_round;
          ++res.oracle_layers;
          const OracleBundle* bundle = access.bundle;
          if (opt.layer_bundle)
            if (const OracleBundle* b = opt.layer_bundle(oracle_in_round)) bundle = b;
          if (opt.before_oracle) opt.before_oracle(oracle_in_round, states);
          int total = 0;
          for (int t = 0; t < p.tracks; ++t) {
            const auto slots = s.slots(StageInput{t, mem});
            check_slots(bundle, access.stochastic, slots, states[t].num_qubits());
            std::vector<Slot> det, sto;
            for (const auto& sl : slots) (sl.sub == kStochasticSub ? sto : det).push_back(sl);
            if (!det.empty()) {
              if (s.mode == OracleMode::Flagged) {
                flagged_apply_inplace(*bundle, s.mask, states[t], det, nullptr);
              } else {
                quantum_apply_inplace(*bundle, states[t], det, nullptr);
              }
            }
            if (!sto.empty()) stochastic_apply_inplace(*access.stochastic, states[t], sto, rng, nullptr);
            total += static_cast<int>(slots.size());
          }
          res.ledger.record_application(total);
          break;
        }
        case StageKind::Measure:
        case StageKind::MeasureAll: {
          if (opt.stop_before_measurement) {
            stopped = true;
            break;
          }
          auto& out = mem.values[s.key];
          out.assign(p.tracks, 0);
          for (int t = 0; t < p.tracks; ++t) {
            auto m = s.kind == StageKind::Measure ? measure(states[t], s.qubits, rng) : measure_all(states[t], rng);
            out[t] = m.outcome;
            states[t] = std::move(m.post);
            res.transcript.current().outputs.push_back(m.outcome);
          }
          if (s.kind == StageKind::MeasureAll && p.model == Model::CQ) states.clear();
          break;
        }
      }
    }
    res.depth_used = std::max(res.depth_used, oracle_in_round);
    ++res.rounds_used;
  }
  if (!mem.halted && !stopped)
    for (const auto& s : p.epilogue) {
      if (mem.halted) break;
      run_classical(s, rounds);
    }
  res.output = mem.output;
  res.failure = mem.failure;
  res.states = std::move(states);
  return res;
}

Estimate wilson(std::uint64_t successes, std::uint64_t trials, double z) {
  Estimate e;
  e.successes = successes;
  e.trials = trials;
  if (trials == 0) return e;
  const double n = static_cast<double>(trials);
  const double ph = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (ph + z2 / (2 * n)) / denom;
  const double half = z * std::sqrt(ph * (1 - ph) / n + z2 / (4 * n * n)) / denom;
  e.rate = ph;
  e.lo = successes == 0 ? 0.0 : std::max(0.0, centre - half);
  e.hi = successes == trials ? 1.0 : std::min(1.0, centre + half);
  return e;
}

void parallel_trials(int trials, std::uint64_t seed, int threads, const std::function<void(int, Rng&)>& fn) {
  if (threads <= 1 || trials <= 1) {
    for (int t = 0; t < trials; ++t) {
      Rng rng = split_rng(seed, static_cast<std::uint64_t>(t));
      fn(t, rng);
    }
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto worker = [&] {
    for (;;) {
      const int t = next.fetch_add(1);
      if (t >= trials) return;
      try {
        Rng rng = split_rng(seed, static_cast<std::uint64_t>(t));
        fn(t, rng);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!err) err = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int i = 0; i < std::min(threads, trials); ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

Estimate success_probability(const std::function<TrialSetup(Rng&)>& sampler, int trials, std::uint64_t seed,
                             int threads) {
  if (trials < 1) throw Error(ErrorKind::Precondition, "trials must be >= 1");
  std::vector<char> ok(trials, 0);
  parallel_trials(trials, seed, threads, [&](int t, Rng& rng) {
    TrialSetup setup = sampler(rng);
    const auto res = run(setup.program, setup.access, rng);
    ok[t] = setup.predicate(res) ? 1 : 0;
  });
  return wilson(static_cast<std::uint64_t>(std::count(ok.begin(), ok.end(), 1)), static_cast<std::uint64_t>(trials));
}

}  // namespace hqc
