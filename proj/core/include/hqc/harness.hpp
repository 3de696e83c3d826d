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
#include <string>
#include <vector>

#include "hqc/analysis.hpp"
#include "hqc/serialize.hpp"
#include "hqc/solvers.hpp"

namespace hqc {

inline constexpr const char* kReportSchema = "hqc.report";
inline constexpr const char* kTimingSchema = "hqc.timing";
inline constexpr const char* kTableSchema = "hqc.table";
inline constexpr const char* kOutDirEnv = "HQC_OUT_DIR";

enum ExitCode : int { kExitOk = 0, kExitThreshold = 1, kExitUsage = 2, kExitValidation = 3 };

struct ExperimentConfig {
  std::string problem = "serial";   // simon | serial | ss | scs
  std::string model = "cq";         // qnc | qc | cq
  std::string variant = "search";   // search | decision
  int n = 4;
  int d = 2;
  int depth = -1;                   // -1 keeps the solver's own budget
  int trials = 100;
  std::uint64_t seed = 0;
  double threshold = 2.0 / 3.0;
  std::string instance;             // fixed instance file; empty samples per trial
  int threads = 1;                  // results do not depend on it
};

struct TrialRow {
  int trial = 0;
  std::uint64_t seed = 0;
  bool success = false;
  int depth_used = 0;
  int oracle_layers = 0;
  std::uint64_t quantum_queries = 0;  // q-bar
  std::uint64_t classical_queries = 0;
  std::string failure;
  double runtime_ms = 0;              // timing; never in the canonical report
};

struct ExperimentReport {
  ExperimentConfig config;
  std::string solver;
  bool validated = true;
  std::string violation;
  std::vector<TrialRow> rows;
  Estimate aggregate;

  bool meets_threshold() const { return validated && aggregate.rate >= config.threshold; }
  int exit_code() const;
};

Model parse_model(const std::string& name);
Variant parse_variant(const std::string& name);

// Trial t runs on Rng(trial_seed(master, t)): first draw of split_rng(master, t).
// `gen --seed trial_seed(...)` therefore reproduces that trial's instance.
std::uint64_t trial_seed(std::uint64_t master, int trial);

// Throws Error(Unsupported) past the size caps.
InstanceRecord generate_instance(ProblemKind problem, int n, int d, Rng& rng, Variant variant = Variant::Search);
InstanceRecord generate_instance(ProblemKind problem, int n, int d, std::uint64_t seed,
                                 Variant variant = Variant::Search);

// Dispatches to the solver for (problem, model); Error(Unsupported) if none.
SolverReport solve_record(const InstanceRecord& record, Model model, int budget, Rng& rng);
bool solver_succeeded(const InstanceRecord& record, const SolverReport& report);

ExperimentReport run_experiment(const ExperimentConfig& config);

Estimate aggregate_rows(const std::vector<TrialRow>& rows);
// Canonical report: config echo, rows without runtimes, aggregate.
std::string report_json(const ExperimentReport& report);
std::string timing_json(const ExperimentReport& report);
std::string report_csv(const ExperimentReport& report);
ExperimentReport report_from_json(const std::string& text);
// Base file name (no extension) for a report.
std::string report_stem(const ExperimentConfig& config);

struct TableCell {
  std::string problem;
  std::string model;
  int depth = 0;
  int n = 0;
  int d = 0;
  Estimate estimate;
};

std::vector<TableCell> table_from_reports(const std::vector<ExperimentReport>& reports);
std::string render_table(const std::vector<TableCell>& cells);
std::string table_csv(const std::vector<TableCell>& cells);
std::vector<TableCell> table_from_csv(const std::string& text);
// Every *.json report under `dir`; Error(Precondition) "no reports" if none.
std::vector<ExperimentReport> load_reports(const std::string& dir);

// Suites: combinatorics, shuffler, decomposition, o2h, find, hardness-probe.
const std::vector<std::string>& suite_names();
SuiteReport run_suite(const std::string& suite, std::uint64_t seed);

std::string default_out_dir();
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace hqc
