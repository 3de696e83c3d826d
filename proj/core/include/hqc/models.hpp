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

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hqc/common.hpp"
#include "hqc/oracle.hpp"
#include "hqc/statevec.hpp"

namespace hqc {

enum class Model { QNC, QC, CQ };
const char* to_string(Model m);

enum class StageKind { Classical, Unitary, Oracle, Measure, MeasureAll };
const char* to_string(StageKind k);

struct ClassicalMemory {
  std::map<std::string, std::vector<std::uint64_t>> values;  // per-track outcomes
  std::map<std::string, std::uint64_t> scalars;
  std::map<std::string, std::vector<std::uint64_t>> lists;
  std::optional<std::uint64_t> output;
  std::string failure;
  bool halted = false;

  std::uint64_t scalar(const std::string& k, std::uint64_t fallback = 0) const {
    auto it = scalars.find(k);
    return it == scalars.end() ? fallback : it->second;
  }
};

struct StageInput {
  int track = 0;
  const ClassicalMemory& mem;
};

struct TranscriptRound {
  int round = 0;
  std::vector<std::pair<int, std::uint64_t>> bottom_queries;   // I_j
  std::vector<std::vector<std::uint64_t>> revealed_paths;      // Y_j / H_j
  std::vector<std::array<std::uint64_t, 3>> revealed_triples;  // R_j
  std::vector<std::uint64_t> outputs;                          // s_j
  std::vector<std::vector<std::uint64_t>> exposed_paths;       // S_j

  bool operator==(const TranscriptRound&) const = default;
};

struct Transcript {
  std::vector<TranscriptRound> rounds;

  TranscriptRound& open(int round);
  TranscriptRound& current();
  bool operator==(const Transcript&) const = default;
};

class ClassicalContext {
 public:
  ClassicalContext(ClassicalMemory& mem, Transcript& tr, QueryLedger& ledger, const OracleBundle* bundle,
                   const StochasticOracleSpec* stochastic, Rng& rng, int round, int tracks)
      : mem_(mem), tr_(tr), ledger_(ledger), bundle_(bundle), stochastic_(stochastic), rng_(rng),
        round_(round), tracks_(tracks) {}

  ClassicalMemory& mem() { return mem_; }
  Transcript& transcript() { return tr_; }
  Rng& rng() { return rng_; }
  int round() const { return round_; }
  int tracks() const { return tracks_; }

  // Classical oracle port; bottom answers are logged to the transcript.
  std::uint64_t query(int sub, std::uint64_t x);
  StochasticAnswer stochastic(std::uint64_t b);

  void output(std::uint64_t v) { mem_.output = v; }
  void fail(const std::string& why) { mem_.failure = why; }
  void halt() { mem_.halted = true; }

 private:
  ClassicalMemory& mem_;
  Transcript& tr_;
  QueryLedger& ledger_;
  const OracleBundle* bundle_;
  const StochasticOracleSpec* stochastic_;
  Rng& rng_;
  int round_;
  int tracks_;
};

using LayerFn = std::function<GateLayer(const StageInput&)>;
using SlotFn = std::function<std::vector<Slot>(const StageInput&)>;
using ClassicalFn = std::function<void(ClassicalContext&)>;

enum class OracleMode { Plain, Flagged };

struct Stage {
  StageKind kind = StageKind::Unitary;
  std::string label;
  LayerFn layer;
  SlotFn slots;
  bool dynamic = false;         // generator reads classical memory
  std::vector<int> qubits;      // Measure
  std::string key;              // Measure / MeasureAll destination
  ClassicalFn classical;
  bool coherent = false;        // classical routine invoked on live amplitudes
  OracleMode mode = OracleMode::Plain;
  ShadowMask mask;              // Flagged mode
};

namespace stage {
Stage unitary(GateLayer layer, std::string label = "U");
Stage unitary(LayerFn fn, std::string label = "U");  // dynamic
Stage oracle(std::vector<Slot> slots, std::string label = "O");
Stage oracle(SlotFn fn, std::string label = "O");    // dynamic
Stage flagged_oracle(std::vector<Slot> slots, ShadowMask mask, std::string label = "O^B");
Stage measure(std::vector<int> qubits, std::string key);
Stage measure_all(std::string key);
Stage classical(ClassicalFn fn, std::string label = "A");
}  // namespace stage

// QNC and QC: `stages` is the whole circuit. CQ: `stages` is one round,
// repeated up to `rounds` times, followed by `epilogue`.
struct HybridProgram {
  std::string name;
  Model model = Model::QNC;
  int depth = 0;
  int rounds = 1;
  int tracks = 1;
  RegisterLayout layout;
  std::vector<Stage> stages;
  std::vector<Stage> epilogue;
};

struct ValidationReport {
  bool ok = true;
  std::string kind;       // violation kind, empty when ok
  int stage = -1;         // index of the first violating stage
  std::string message;
  int depth_used = 0;     // oracle layers (per round for CQ)
};

ValidationReport validate(const HybridProgram& program);
std::string describe(const HybridProgram& program);

struct OracleAccess {
  const OracleBundle* bundle = nullptr;
  const StochasticOracleSpec* stochastic = nullptr;
};

struct RunOptions {
  // Bundle used at the k-th oracle layer of a round (1-based); null keeps the default.
  std::function<const OracleBundle*(int)> layer_bundle;
  // Called with the live track states right before the k-th oracle layer.
  std::function<void(int, const std::vector<QuantumState>&)> before_oracle;
  // Stop before the first measurement of the circuit and keep the live states.
  bool stop_before_measurement = false;
};

struct RunResult {
  std::optional<std::uint64_t> output;
  std::string failure;
  Transcript transcript;
  QueryLedger ledger;
  ClassicalMemory memory;
  int rounds_used = 0;
  int depth_used = 0;          // max oracle layers in one round
  int oracle_layers = 0;       // total oracle layers executed
  int live_qubits_at_classical = 0;  // CQ firewall: stays 0
  std::vector<QuantumState> states;  // live states at the end
};

// Throws Error(Validation) if the program fails validate().
RunResult run(const HybridProgram& program, const OracleAccess& access, Rng& rng, const RunOptions& options = {});

struct Estimate {
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  double rate = 0;
  double lo = 0;
  double hi = 0;
};
Estimate wilson(std::uint64_t successes, std::uint64_t trials, double z = 1.96);

struct TrialSetup {
  HybridProgram program;
  OracleAccess access;
  std::shared_ptr<const void> keepalive;
  std::function<bool(const RunResult&)> predicate;
};

// Fresh instance and fresh run per trial; trial t uses split_rng(seed, t).
Estimate success_probability(const std::function<TrialSetup(Rng&)>& sampler, int trials, std::uint64_t seed,
                             int threads = 1);

// Runs fn(t, rng_t) for t in [0, trials) on up to `threads` threads.
void parallel_trials(int trials, std::uint64_t seed, int threads, const std::function<void(int, Rng&)>& fn);

}  // namespace hqc
