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

#include <cmath>
#include <map>

#include <gtest/gtest.h>

#include "hqc/solvers.hpp"

namespace hqc {
namespace {

// Every nonzero s' orthogonal to all rows, by exhaustion.
std::vector<std::uint64_t> brute_nullspace(int n, const std::vector<std::uint64_t>& rows) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t s = 1; s < (std::uint64_t{1} << n); ++s) {
    bool ok = true;
    for (auto w : rows) ok = ok && dot2(w, s) == 0;
    if (ok) out.push_back(s);
  }
  return out;
}

TEST(Gf2, BasisOfOrthogonalComplement) {
  const LinearSystemGF2 sys{3, {0b010, 0b101}};
  const auto brute = brute_nullspace(3, sys.rows);
  ASSERT_EQ(brute, std::vector<std::uint64_t>{0b101});
  const auto sol = gf2_nullspace(sys);
  EXPECT_EQ(sol.status, Gf2Status::Unique);
  EXPECT_EQ(sol.s, 0b101u);
  EXPECT_EQ(sol.rank, 2);
}

TEST(Gf2, EmptyRowsRankDeficient) {
  EXPECT_EQ(gf2_nullspace({2, {}}).status, Gf2Status::RankDeficient);
}

TEST(Gf2, FullRankInconsistent) {
  // Rows include s = 101 with w.s = 1, so no nonzero period survives.
  EXPECT_EQ(gf2_nullspace({3, {0b010, 0b101, 0b100}}).status, Gf2Status::Inconsistent);
}

TEST(Gf2, AgreesWithBruteForceOnRandomSystems) {
  Rng rng(1);
  for (int t = 0; t < 2000; ++t) {
    const int n = 1 + static_cast<int>(rng() % 7);
    std::vector<std::uint64_t> rows(rng() % 10);
    for (auto& r : rows) r = rng() & low_mask(n);
    const auto brute = brute_nullspace(n, rows);
    const auto sol = gf2_nullspace({n, rows});
    if (brute.empty()) {
      ASSERT_EQ(sol.status, Gf2Status::Inconsistent);
    } else if (brute.size() == 1) {
      ASSERT_EQ(sol.status, Gf2Status::Unique);
      ASSERT_EQ(sol.s, brute[0]);
    } else {
      ASSERT_EQ(sol.status, Gf2Status::RankDeficient);
    }
  }
}

TEST(Gf2, WideRowRejected) { EXPECT_THROW(gf2_nullspace({2, {0b100}}), Error); }

TEST(SimonRound, SingleBitGivesZeroRow) {
  Rng rng(2);
  const auto g = sample_simon(1, rng);
  const OracleBundle b{"simon", {g.table}};
  for (int t = 0; t < 50; ++t) EXPECT_EQ(run(simon_program(1), {&b, nullptr}, rng).memory.values.at("w").at(0), 0u);
}

TEST(SimonRound, RowsUniformOverOrthogonalComplement) {
  Rng rng(3);
  const auto g = sample_simon(4, rng);
  const OracleBundle b{"simon", {g.table}};
  const int runs = 10000;
  const auto res = run(simon_program(4, runs), {&b, nullptr}, rng);
  std::map<std::uint64_t, int> hist;
  for (auto w : res.memory.values.at("w")) hist[w]++;
  double tv = 0;
  for (std::uint64_t w = 0; w < 16; ++w) {
    const double target = dot2(w, g.s) == 0 ? 1.0 / 8 : 0.0;
    tv += 0.5 * std::abs(hist[w] / double(runs) - target);
  }
  EXPECT_LE(tv, 0.03);
}

TEST(SimonRound, ThreeNRowsReachFullRank) {
  Rng rng(4);
  const auto g = sample_simon(6, rng);
  const OracleBundle b{"simon", {g.table}};
  int full = 0;
  const int trials = 1000;
  for (int t = 0; t < trials; ++t) {
    const auto res = run(simon_program(6, 18), {&b, nullptr}, rng);
    full += gf2_rank(res.memory.values.at("w")) == 5;
  }
  EXPECT_GE(full / double(trials), 0.99);
}

TEST(SimonQnc, RecoversPeriod) {
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    const auto g = sample_simon(5, rng);
    const auto r = solve_simon_qnc(g, rng);
    ASSERT_TRUE(r.answer.has_value()) << r.failure;
    EXPECT_EQ(*r.answer, g.s);
    EXPECT_EQ(r.depth, 1);
  }
}

// ---------------------------------------------------------------- serial

TEST(SerialCq1, SolvesAndQueriesCarryKeys) {
  Rng rng(6);
  int wins = 0;
  for (int t = 0; t < 30; ++t) {
    const auto inst = sample_serial(3, 6, rng);
    const auto r = solve_serial_cq1(inst, rng);
    ASSERT_TRUE(r.validated);
    EXPECT_LE(r.depth, 1);
    wins += r.answer == inst.answer;
    for (const auto& q : r.ledger.classical)
      if (q.sub >= 1) EXPECT_EQ(pair_low(q.input, 6), inst.s[q.sub - 1]);
  }
  EXPECT_GE(wins, 27);
}

TEST(SerialCq1, ValidatesAtDepthOne) {
  const auto v = validate(serial_cq1_program(3, 6));
  EXPECT_TRUE(v.ok);
  EXPECT_EQ(v.depth_used, 1);
}

TEST(SerialQc, SolvesAtDepthTwoCPlusTwo) {
  Rng rng(7);
  int wins = 0;
  for (int t = 0; t < 30; ++t) {
    const auto inst = sample_serial(2, 5, rng);
    const auto r = solve_serial_qc(inst, rng);
    ASSERT_TRUE(r.validated);
    EXPECT_EQ(r.depth, 6);
    wins += r.answer == inst.answer;
  }
  EXPECT_GE(wins, 27);
}

TEST(SerialQc, BudgetBelowTwoCPlusTwoRejected) {
  auto p = serial_qc_program(2, 5);
  EXPECT_TRUE(validate(p).ok);
  p.depth = 5;
  EXPECT_EQ(validate(p).kind, "depth-exceeded");
  Rng rng(8);
  const auto r = solve_serial_qc(sample_serial(2, 5, rng), rng, 5);
  EXPECT_FALSE(r.validated);
  EXPECT_FALSE(r.answer.has_value());
}

TEST(SerialQc, DecisionVariant) {
  Rng rng(9);
  int right = 0;
  const int trials = 40;
  for (int t = 0; t < trials; ++t) {
    const auto inst = sample_serial(2, 5, rng, Variant::Decision);
    const auto r = solve_serial_qc(inst, rng);
    right += r.answer && *r.answer == static_cast<std::uint64_t>(inst.label);
  }
  EXPECT_GE(right / double(trials), 0.9);
}

// ---------------------------------------------------------------- d-SS

TEST(SsCq, Solves) {
  Rng rng(10);
  int wins = 0;
  for (int t = 0; t < 30; ++t) {
    const auto inst = sample_ss(2, 4, rng);
    const auto r = solve_ss_cq(inst, rng);
    ASSERT_TRUE(r.validated);
    wins += r.answer == inst.s;
  }
  EXPECT_GE(wins, 27);
}

TEST(SsCq, RoundsUseForwardAndUncomputeLayers) {
  Rng rng(11);
  const auto inst = sample_ss(2, 4, rng);
  const auto r = solve_ss_cq(inst, rng);
  ASSERT_GE(r.rounds, 1);
  EXPECT_EQ(r.depth, 2 * 2 + 1);
  EXPECT_EQ(r.oracle_layers % 5, 0);
  EXPECT_EQ(validate(ss_cq_program(2, 4)).depth_used, 5);
}

TEST(SsCq, UncomputedRoundMatchesPlainSimonStatistics) {
  Rng rng(12);
  const auto inst = sample_ss(2, 4, rng);
  const auto b = inst.shuffler.bundle();
  auto p = ss_cq_program(2, 4);
  p.tracks = 1;
  RunOptions opts;
  opts.stop_before_measurement = true;
  const auto res = run(p, {&b, nullptr}, rng, opts);
  const auto& st = res.states.at(0);
  const auto q = p.layout.qubits("Q");
  const std::vector<int> low(q.begin(), q.begin() + 4);
  double tv = 0;
  std::map<std::uint64_t, double> dist;
  for (const auto& [o, pr] : outcome_distribution(st, low)) dist[o] += pr;
  for (std::uint64_t w = 0; w < 16; ++w) tv += 0.5 * std::abs(dist[w] - (dot2(w, inst.s) == 0 ? 1.0 / 8 : 0.0));
  EXPECT_LE(tv, 1e-9);
  // Shuffler registers come back to zero.
  for (const auto& [idx, amp] : st.entries())
    for (int k = 1; k <= 2; ++k) EXPECT_EQ(p.layout.read(idx, "R" + std::to_string(k)), 0u);
}

// ---------------------------------------------------------------- d-SCS

TEST(ScsQc4, SolvesAtDepthFourForAnyD) {
  Rng rng(13);
  for (int d : {1, 3, 5}) {
    int wins = 0;
    for (int t = 0; t < 20; ++t) {
      const auto inst = sample_scs(d, 6, rng);
      const auto r = solve_scs_qc4(inst, rng);
      ASSERT_TRUE(r.validated);
      EXPECT_EQ(r.depth, 4);
      wins += r.answer == inst.s();
    }
    EXPECT_GE(wins, 18) << "d=" << d;
  }
}

TEST(ScsQc4, StateAfterThirdLayerIsCollisionPair) {
  Rng rng(14);
  const auto inst = sample_scs(2, 4, rng);
  const auto b = inst.bundle();
  auto p = scs_qc4_program(2, 4);
  p.tracks = 1;
  const auto pq = p.layout.qubits("P");
  std::vector<int> undo{p.layout.qubit("B", 0)};
  undo.insert(undo.end(), pq.begin(), pq.begin() + 4);
  QuantumState captured;
  RunOptions opts;
  opts.before_oracle = [&](int k, const std::vector<QuantumState>& s) {
    if (k == 4) captured = apply_layer(s.at(0), hadamard_layer(undo));
  };
  run(p, {&b, &inst.stochastic}, rng, opts);
  ASSERT_EQ(captured.support_size(), 2u);
  const auto pre = collision_pairs(inst.f, nullptr);
  std::vector<std::uint64_t> seen;
  for (const auto& [idx, amp] : captured.entries()) {
    EXPECT_NEAR(std::norm(amp), 0.5, 1e-9);
    const auto y = p.layout.read(idx, "Y");
    const auto pv = p.layout.read(idx, "P");
    EXPECT_TRUE(pv == inst.p.at(pre[y].first) || pv == inst.p.at(pre[y].second));
    EXPECT_EQ(p.layout.read(idx, "X"), 0u);
    seen.push_back(pv);
  }
  EXPECT_NE(seen[0], seen[1]);
}

TEST(ScsQc4, RowsSatisfyAugmentedPeriod) {
  Rng rng(15);
  const auto inst = sample_scs(2, 4, rng);
  const auto r = solve_scs_qc4(inst, rng);
  ASSERT_FALSE(r.rows.empty());
  const std::uint64_t key = inst.s() | std::uint64_t{1} << 4;
  for (auto w : r.rows) EXPECT_EQ(dot2(w, key), 0) << w;
}

TEST(ScsQc4, DepthThreeRejected) {
  Rng rng(16);
  const auto r = solve_scs_qc4(sample_scs(3, 6, rng), rng, 3);
  EXPECT_FALSE(r.validated);
  EXPECT_EQ(r.violation, "depth-exceeded");
}

TEST(ScsCq, SolvesWithinBudget) {
  Rng rng(17);
  int wins = 0;
  for (int t = 0; t < 30; ++t) {
    const auto inst = sample_scs(2, 4, rng);
    const auto r = solve_scs_cq(inst, rng);
    ASSERT_TRUE(r.validated);
    EXPECT_EQ(r.depth, 2 + 4);
    wins += r.answer == inst.s();
  }
  EXPECT_GE(wins, 27);
}

TEST(ScsCq, TruncatedBudgetNeverAnswersWrong) {
  Rng rng(18);
  int wrong = 0;
  for (int t = 0; t < 50; ++t) {
    const auto inst = sample_scs(2, 4, rng);
    const auto r = solve_scs_cq(inst, rng, 2);
    if (r.answer && *r.answer != inst.s()) ++wrong;
    EXPECT_FALSE(r.validated);
  }
  EXPECT_EQ(wrong, 0);
}

TEST(Solvers, SeedStable) {
  Rng g1(19), g2(19);
  const auto a = solve_serial_qc(sample_serial(2, 4, g1), g1);
  const auto b = solve_serial_qc(sample_serial(2, 4, g2), g2);
  EXPECT_EQ(a.answer, b.answer);
  EXPECT_EQ(a.rows, b.rows);
  EXPECT_EQ(a.transcript, b.transcript);
}

}  // namespace
}  // namespace hqc
