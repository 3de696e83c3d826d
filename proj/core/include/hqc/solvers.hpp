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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hqc/models.hpp"
#include "hqc/problems.hpp"

namespace hqc {

// ---------------------------------------------------------------- GF(2)

struct LinearSystemGF2 {
  int n = 0;
  std::vector<std::uint64_t> rows;
};

enum class Gf2Status { Unique, RankDeficient, Inconsistent };
const char* to_string(Gf2Status s);

struct Gf2Solution {
  Gf2Status status = Gf2Status::RankDeficient;
  std::uint64_t s = 0;  // valid when status == Unique
  int rank = 0;
};

// Unique iff the nullspace of the rows is exactly {0, s}.
Gf2Solution gf2_nullspace(const LinearSystemGF2& sys);
int gf2_rank(std::vector<std::uint64_t> rows);

// ---------------------------------------------------------------- Simon core

// The three quantum stages of one Simon round: H on x (plus `prepare`),
// the oracle call, H on x. Measurement is left to the caller.
std::vector<Stage> simon_round(const std::vector<int>& x, const std::vector<int>& query,
                               const std::vector<int>& response, int sub, LayerFn prepare = {});

// QNC_1 program on a single n-bit Simon oracle (sub 0): registers Q and R,
// measuring Q into "w".
HybridProgram simon_program(int n, int tracks = 1);

// ---------------------------------------------------------------- solvers

inline constexpr int kBatchesPerLevel = 8;

struct SolverReport {
  std::string solver;
  Model model = Model::CQ;
  int budget = 0;
  bool validated = false;
  std::string violation;
  std::optional<std::uint64_t> answer;
  std::string failure;
  int rounds = 0;
  int depth = 0;          // max oracle layers per round (QC: unitary layers)
  int oracle_layers = 0;  // executed over the whole run
  std::uint64_t quantum_queries = 0;
  std::uint64_t classical_queries = 0;
  std::vector<std::uint64_t> rows;  // every measured constraint row
  Transcript transcript;
  QueryLedger ledger;
};

// Programs depend only on sizes; the oracles are attached at run time.
HybridProgram serial_cq1_program(int c, int n);
HybridProgram serial_qc_program(int c, int n, Variant variant = Variant::Search);
HybridProgram ss_cq_program(int d, int n, int budget = -1);
HybridProgram scs_qc4_program(int d, int n);
HybridProgram scs_cq_program(int d, int n, int budget = -1);

// Parallel QNC_1 Simon rounds (3n tracks per batch) with classical GF(2) post-processing.
SolverReport solve_simon_qnc(const SimonInstance& inst, Rng& rng, int budget = -1);
SolverReport solve_serial_cq1(const SerialInstance& inst, Rng& rng, int budget = -1);
SolverReport solve_serial_qc(const SerialInstance& inst, Rng& rng, int budget = -1);
SolverReport solve_ss_cq(const SSInstance& inst, Rng& rng, int budget = -1);
SolverReport solve_scs_qc4(const SCSInstance& inst, Rng& rng, int budget = -1);
SolverReport solve_scs_cq(const SCSInstance& inst, Rng& rng, int budget = -1);

}  // namespace hqc
