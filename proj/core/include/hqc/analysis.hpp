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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hqc/models.hpp"
#include "hqc/oracle.hpp"
#include "hqc/problems.hpp"
#include "hqc/statevec.hpp"

namespace hqc {

// ---------------------------------------------------------------- permutations

inline constexpr int kMaxExhaustiveN = 5;

using Permutation = std::vector<int>;  // perm[x] = y
// A part is a set of paths (x, y); bit x * N + y of the mask holds (x, y).
using PartMask = std::uint32_t;

std::uint32_t perm_mask(const Permutation& perm);
int part_size(PartMask part);
// True iff the paths have distinct first and distinct second coordinates.
bool is_part(PartMask part, int N);
std::vector<std::pair<int, int>> part_paths(PartMask part, int N);
// Every part of S_N, ordered by size then mask.
std::vector<PartMask> all_parts(int N);

// Explicit distribution over S_N in lexicographic order of permutations.
class PermDistribution {
 public:
  static PermDistribution uniform(int N);
  static PermDistribution point(const Permutation& perm);
  static PermDistribution from_weights(int N, std::vector<double> weights);

  int N() const { return N_; }
  const std::vector<Permutation>& perms() const;
  const std::vector<std::uint32_t>& masks() const;
  const std::vector<double>& probs() const { return probs_; }
  std::size_t index_of(const Permutation& perm) const;

  double prob_contains(PartMask part) const;
  double prob_if(const std::function<bool(std::size_t)>& pred) const;
  PermDistribution conditioned(const std::function<bool(std::size_t)>& pred) const;
  PermDistribution conditioned_on_part(PartMask part) const;
  double distance_l1(const PermDistribution& other) const;
  void check() const;

 private:
  int N_ = 0;
  std::vector<double> probs_;
};

struct DeltaResult {
  double delta = 0;       // max over parts of log2(Pr_t[S] / Pr_b[S]) / |S|
  PartMask witness = 0;
};

// Parts sharing a cell with `fixed` are skipped; the baseline defaults to
// uniform conditioned on `fixed`.
DeltaResult nonuniformity_delta(const PermDistribution& dist, const PermDistribution* baseline = nullptr,
                                PartMask fixed = 0);

struct DecompositionComponent {
  double weight = 0;
  PartMask fixed = 0;       // S_i, including any fixed part of the baseline
  PartMask added = 0;       // paths fixed by this decomposition
  PermDistribution dist;
};

struct DecompositionResult {
  std::vector<DecompositionComponent> components;
  double residual = 0;
  std::optional<PermDistribution> residual_dist;
  double m = 0;             // log2(1/gamma)
  double size_bound = 0;    // 2m / (delta_target - delta_source)
  double reconstruction_error = 0;
  PermDistribution target;
};

struct DecompositionOptions {
  double gamma = 0.125;
  double delta_target = 1.0;
  double delta_source = 0.0;
  PartMask base_fixed = 0;  // baseline is uniform conditioned on this part
};

// Greedy maximal-part splitting of an already conditioned distribution.
DecompositionResult decompose(const PermDistribution& target, const DecompositionOptions& opts);
// Conditions on advice[perm] == r, then decomposes; throws Precondition
// when Pr[advice == r] < gamma.
DecompositionResult decompose_conditioned(const PermDistribution& dist, const std::vector<int>& advice, int r,
                                          double gamma, double delta, PartMask base_fixed = 0,
                                          double delta_source = 0.0);

// ---------------------------------------------------------------- checks

struct CheckResult {
  std::string name;
  double statistic = 0;
  double bound = 0;
  double lo = 0;
  double hi = 0;
  bool pass = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  bool all_pass() const;
  int failures() const;
};

// ---------------------------------------------------------------- Pr[find]

struct FindConfig {
  OracleBundle bundle;
  QuantumState rho;
  GateLayer U;
  std::vector<Slot> slots;
  std::function<ShadowMask(Rng&)> sample_mask;  // drawn independently of (U, rho)
  double p_hit = 0;                             // max_x Pr[x in S]
};

struct FindExperiment {
  int qbar = 0;
  double p_hit = 0;
  int trials = 0;
  double estimate = 0;
  double sigma = 0;       // standard error of the mean
  double bound = 0;       // qbar * p_hit
  bool holds = false;     // estimate - 3 sigma <= bound
};

// Exact flag probability per sampled S, averaged over `trials` draws.
FindExperiment estimate_find(const FindConfig& cfg, int trials, Rng& rng);
double find_probability(const QuantumState& rho, const GateLayer& U, const std::vector<Slot>& slots,
                        const ShadowMask& mask);

// ---------------------------------------------------------------- O2H

struct O2HBranch {
  double prob = 1;
  OracleBundle L;
  ShadowMask S;
  QuantumState rho;
};

struct O2HInstance {
  std::vector<O2HBranch> branches;
  GateLayer U;
  std::vector<Slot> slots;
  GateLayer post;
  std::function<bool(std::uint64_t)> accept;  // the projector as a basis predicate
};

struct O2HResult {
  double lhs = 0;         // |Pr[accept : L] - Pr[accept : G]|
  double bures_mid = 0;   // Bures distance of the two output ensembles
  double rhs = 0;         // sqrt(2 Pr[find])
  double pr_find = 0;
  bool holds(double tol = 1e-9) const { return lhs <= bures_mid + tol && bures_mid <= rhs + tol; }
};

O2HResult check_o2h(const O2HInstance& inst);
// Random instance on `qubits` qubits: query and response registers, one
// workspace qubit; the response flag starts in |0> and no gate touches it.
O2HInstance random_o2h_instance(Rng& rng, int qubits = 6);

// ---------------------------------------------------------------- d-Shuffler

// Conditions on a shuffler: fixed paths and required or excluded domain
// values; index i of required/excluded refers to dom_i, 1 <= i <= d.
struct ShufflerBeta {
  std::vector<std::vector<std::uint64_t>> paths;     // (x_{-1}, x_0, ..., x_{d-1})
  std::vector<std::vector<std::uint64_t>> required;  // size d + 1, entry 0 unused
  std::vector<std::vector<std::uint64_t>> excluded;
  bool mentions(std::uint64_t x, int i) const;
};

// Uniform shuffler conditioned on beta.
ShufflerInstance sample_shuffler_beta(int d, int n, const FunctionTable& f, const ShufflerBeta& beta, Rng& rng);

struct DomHitResult {
  Estimate estimate;
  double exact = 0;
  double bound = 0;
  bool holds = false;
  bool rerun = false;
};

// Monte Carlo Pr[x in dom_i]; exact = (N - K - |H|) / (M - K - |H| - |E|) and
// bound = 2^delta * N / (M - K - |H| - |E|).
DomHitResult check_dom_hit(int d, int n, const ShufflerBeta& beta, std::uint64_t x, int i, int trials, Rng& rng,
                           double delta = 0.0);

// ---------------------------------------------------------------- suites

SuiteReport verify_combinatorics(int max_a = 12);
SuiteReport verify_shuffler(std::uint64_t seed, int seeds = 100, int trials = 10000);
SuiteReport verify_decomposition(std::uint64_t seed, int family = 20);
SuiteReport verify_o2h(std::uint64_t seed, int instances = 1000);
SuiteReport verify_find(std::uint64_t seed, int configs = 100, int trials = 10000);

// ---------------------------------------------------------------- probes

struct ShadowProbeResult {
  int instances = 0;
  int violations = 0;        // instances with TV > bound + 1e-9
  double mean_tv = 0;
  double mean_bound = 0;
  double max_excess = 0;     // max of TV - bound
  double shadow_success = 0; // mean exact Pr[output == answer] on the shadow run
  double success_sigma = 0;
  double real_success = 0;
  double guess = 0;          // 1 / 2^n
};

// Random QNC_d adversary on a c-serial instance layout; no gate touches a flag.
HybridProgram random_serial_adversary(int c, int n, int depth, Rng& rng);

// Exact TV between the outputs of the real and shadowed runs, against the
// hybrid bound sum_i sqrt(2 Pr[find]) taken on the shadow run.
struct ShadowComparison {
  double tv = 0;
  double bound = 0;
  double shadow_success = 0;
  double real_success = 0;
};
ShadowComparison shadow_compare(const HybridProgram& adversary, const SerialInstance& inst);

ShadowProbeResult shadow_equivalence_probe(int c, int n, int depth, int adversaries, int instances_per,
                                           std::uint64_t seed);

struct ScsProbeResult {
  Estimate success;
  Estimate collision;
  Estimate y_distinct;
  int stochastic_calls = 0;
  double guess = 0;            // 1 / (2^n - 1)
  double p_distinct = 0;       // exact product formula
  double success_bound = 0;    // guess + 1 - p_distinct
  double collision_bound = 0;  // 1 - p_distinct
};

// Product formula prod_{k < q} (1 - k / 2^{n-1}).
double y_distinct_probability(int n, int calls);

// Birthday attacker in CQ_depth: classical stochastic samples plus quantum
// rounds measured in full; walks h classically and reads p' on each sample.
HybridProgram scs_adversary_program(int d, int n, int depth, int rounds, int classical_per_round);
ScsProbeResult scs_hardness_probe(int d, int n, int depth, int trials, std::uint64_t seed, int rounds = 2,
                                  int classical_per_round = 1);

// Shadow probe on 2-serial Simon's (n = 4, QNC_2) and the CQ_2 birthday
// attacker on 3-SCS (n = 4). Monte Carlo checks rerun once at 10x trials.
SuiteReport verify_hardness_probe(std::uint64_t seed, int adversaries = 20, int instances_per = 10,
                                  int trials = 10000);

}  // namespace hqc
