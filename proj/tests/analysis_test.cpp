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
#include <numeric>

#include <gtest/gtest.h>

#include "hqc/analysis.hpp"

namespace hqc {
namespace {

double factorial(int k) { return std::tgamma(k + 1.0); }

// ---------------------------------------------------------------- combinatorics

TEST(Combinatorics, RatioIdentitiesHold) {
  const auto rep = verify_combinatorics(12);
  for (const auto& c : rep.checks) EXPECT_TRUE(c.pass) << c.name << " " << c.detail;
}

TEST(Parts, EnumerationMatchesBruteForce) {
  for (int N = 1; N <= 4; ++N) {
    std::vector<PartMask> brute;
    for (PartMask m = 0; m < (PartMask{1} << (N * N)); ++m)
      if (is_part(m, N)) brute.push_back(m);
    auto parts = all_parts(N);
    std::sort(parts.begin(), parts.end());
    EXPECT_EQ(parts, brute) << "N=" << N;
    // Partial matchings of K_{N,N}.
    double count = 0;
    for (int k = 0; k <= N; ++k) {
      const double c = factorial(N) / (factorial(k) * factorial(N - k));
      count += c * c * factorial(k);
    }
    EXPECT_EQ(static_cast<double>(brute.size()), count);
  }
}

TEST(Parts, PathsRoundTrip) {
  const Permutation p{2, 0, 1};
  const auto m = perm_mask(p);
  EXPECT_EQ(part_size(m), 3);
  const auto paths = part_paths(m, 3);
  ASSERT_EQ(paths.size(), 3u);
  for (const auto& [x, y] : paths) EXPECT_EQ(p[x], y);
  EXPECT_FALSE(is_part(0b000000011, 3));  // (0,0) and (0,1)
}

TEST(PermDistribution, UniformContainmentIsFallingFactorial) {
  const int N = 4;
  const auto u = PermDistribution::uniform(N);
  for (PartMask s : all_parts(N))
    EXPECT_NEAR(u.prob_contains(s), factorial(N - part_size(s)) / factorial(N), 1e-12);
}

TEST(PermDistribution, RejectsExhaustiveBeyondCap) {
  EXPECT_THROW(PermDistribution::uniform(kMaxExhaustiveN + 1), Error);
}

// ---------------------------------------------------------------- delta

TEST(Delta, UniformAgainstItselfIsZero) {
  EXPECT_NEAR(nonuniformity_delta(PermDistribution::uniform(3)).delta, 0.0, 1e-12);
}

TEST(Delta, PointMassPeaksAtSinglePaths) {
  const auto r = nonuniformity_delta(PermDistribution::point({1, 2, 0}));
  // max_k log2(3!/(3-k)!) / k is attained at k = 1.
  EXPECT_NEAR(r.delta, std::log2(3.0), 1e-12);
  EXPECT_EQ(part_size(r.witness), 1);
}

TEST(Delta, ConditionedOnFixedPoint) {
  const auto u = PermDistribution::uniform(3);
  const auto& perms = u.perms();
  const auto t = u.conditioned([&](std::size_t i) { return perms[i][0] == 0; });
  const auto r = nonuniformity_delta(t, &u);
  EXPECT_NEAR(r.delta, std::log2(3.0), 1e-12);
  EXPECT_EQ(r.witness, PartMask{1});  // the path (0, 0)
}

TEST(Delta, FixedPartIsExcludedFromTheSearch) {
  const auto u = PermDistribution::uniform(3);
  const auto t = u.conditioned_on_part(1);
  EXPECT_NEAR(nonuniformity_delta(t, nullptr, 1).delta, 0.0, 1e-12);
}

// ---------------------------------------------------------------- decomposition

TEST(Decompose, ConstantAdviceKeepsUniform) {
  const auto u = PermDistribution::uniform(3);
  const auto r = decompose_conditioned(u, std::vector<int>(6, 0), 0, 1.0 / 6, 1.0);
  ASSERT_EQ(r.components.size(), 1u);
  EXPECT_EQ(r.components[0].added, 0u);
  EXPECT_NEAR(r.components[0].weight, 1.0, 1e-12);
  EXPECT_NEAR(r.components[0].dist.distance_l1(u), 0.0, 1e-12);
  EXPECT_EQ(r.residual, 0.0);
}

TEST(Decompose, FirstCoordinateAdvice) {
  const auto u = PermDistribution::uniform(3);
  std::vector<int> g;
  for (const auto& p : u.perms()) g.push_back(p[0]);
  const auto r = decompose_conditioned(u, g, 0, 1.0 / 6, 1.0);
  const double m = std::log2(6.0);
  EXPECT_NEAR(r.m, m, 1e-12);
  double total = r.residual;
  for (const auto& c : r.components) {
    EXPECT_LT(part_size(c.fixed), 2 * m);
    EXPECT_TRUE(is_part(c.fixed, 3));
    total += c.weight;
  }
  EXPECT_NEAR(total, 1.0, 1e-9);
  EXPECT_LE(r.residual, 1.0 / 6 + 1e-12);
  EXPECT_LE(r.reconstruction_error, 1e-9);
}

TEST(Decompose, RandomAdviceReconstructs) {
  Rng rng(1);
  const auto u = PermDistribution::uniform(4);
  for (int k = 0; k < 20; ++k) {
    std::vector<int> g(u.probs().size());
    for (auto& v : g) v = static_cast<int>(rng() % 4);
    std::vector<double> freq(4, 0);
    for (std::size_t i = 0; i < g.size(); ++i) freq[g[i]] += u.probs()[i];
    const int r = static_cast<int>(std::max_element(freq.begin(), freq.end()) - freq.begin());
    const double gamma = 0.125;
    const auto res = decompose_conditioned(u, g, r, gamma, 1.0);
    EXPECT_LE(res.reconstruction_error, 1e-9);
    EXPECT_LE(res.residual, gamma + 1e-12);
    double total = res.residual;
    for (const auto& c : res.components) {
      total += c.weight;
      EXPECT_LT(part_size(c.fixed), res.size_bound);
    }
    EXPECT_NEAR(total, 1.0, 1e-9);
  }
}

TEST(Decompose, RareAdviceValueRejected) {
  const auto u = PermDistribution::uniform(3);
  std::vector<int> g(6, 0);
  g[5] = 1;
  try {
    decompose_conditioned(u, g, 1, 0.5, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Precondition);
  }
}

TEST(Decompose, SuitePasses) {
  const auto rep = verify_decomposition(7, 10);
  for (const auto& c : rep.checks) EXPECT_TRUE(c.pass) << c.name << " " << c.detail;
}

// ---------------------------------------------------------------- Pr[find]

FindConfig uniform_query_config(int n, std::function<ShadowMask(Rng&)> mask) {
  RegisterLayout layout;
  layout.add("Q", n);
  layout.add("R", n + 1);
  FindConfig cfg;
  cfg.bundle = {"id", {FunctionTable::identity(n)}};
  cfg.rho = QuantumState(layout);
  cfg.U = hadamard_layer(layout.qubits("Q"));
  cfg.slots = {Slot{0, layout.qubits("Q"), layout.qubits("R"), -1}};
  cfg.sample_mask = std::move(mask);
  cfg.p_hit = std::ldexp(1.0, -n);
  return cfg;
}

TEST(Find, DisjointMaskGivesZero) {
  const auto cfg = uniform_query_config(3, [](Rng&) {
    return ShadowMask::none(OracleBundle{"id", {FunctionTable::identity(3)}});
  });
  Rng rng(2);
  const auto e = estimate_find(cfg, 100, rng);
  EXPECT_EQ(e.estimate, 0.0);
  EXPECT_TRUE(e.holds);
}

TEST(Find, SingletonMaskOnUniformQuery) {
  const int n = 4;
  const OracleBundle shape{"id", {FunctionTable::identity(n)}};
  const auto cfg = uniform_query_config(n, [&](Rng& rng) {
    auto m = ShadowMask::none(shape);
    m.sets[0] = DomainSet(n);
    m.sets[0].insert(rng() % (1u << n));
    return m;
  });
  Rng rng(3);
  const auto e = estimate_find(cfg, 500, rng);
  EXPECT_NEAR(e.estimate, 1.0 / 16, 1e-12);
  EXPECT_NEAR(e.sigma, 0.0, 1e-9);
  EXPECT_EQ(e.qbar, 1);
  EXPECT_TRUE(e.holds);
}

TEST(Find, FlagMustStartAtZero) {
  RegisterLayout layout;
  layout.add("Q", 2);
  layout.add("R", 3);
  layout.add("flag", 1);
  FindConfig cfg;
  cfg.bundle = {"id", {FunctionTable::identity(2)}};
  cfg.rho = QuantumState(layout, std::uint64_t{1} << 5);
  cfg.slots = {Slot{0, layout.qubits("Q"), layout.qubits("R"), -1}};
  cfg.sample_mask = [&](Rng&) { return ShadowMask::none(cfg.bundle); };
  Rng rng(4);
  EXPECT_THROW(estimate_find(cfg, 10, rng), Error);
}

TEST(Find, SuitePasses) {
  const auto rep = verify_find(5, 10, 2000);
  for (const auto& c : rep.checks) EXPECT_TRUE(c.pass) << c.name << " " << c.detail;
}

// ---------------------------------------------------------------- O2H

TEST(O2H, EmptyMaskGivesZeros) {
  Rng rng(6);
  auto inst = random_o2h_instance(rng, 6);
  for (auto& br : inst.branches) br.S = ShadowMask::none(br.L);
  const auto r = check_o2h(inst);
  EXPECT_NEAR(r.lhs, 0.0, 1e-12);
  EXPECT_NEAR(r.bures_mid, 0.0, 1e-7);
  EXPECT_NEAR(r.rhs, 0.0, 1e-12);
}

TEST(O2H, FullMaskOnBasisQuery) {
  const int q = 2;
  RegisterLayout layout;
  layout.add("Q", q);
  layout.add("R", q + 1);
  FunctionTable t(q, q);
  for (std::uint64_t x = 0; x < 4; ++x) t.set(x, (x + 1) % 4);
  O2HInstance inst;
  O2HBranch br;
  br.L = {"o2h", {t}};
  br.S = ShadowMask::everything(br.L);
  br.rho = QuantumState(layout, 2);
  inst.branches.push_back(br);
  inst.slots = {Slot{0, layout.qubits("Q"), layout.qubits("R"), -1}};
  inst.accept = [&](std::uint64_t i) { return layout.read(i, "R") == 3; };
  const auto r = check_o2h(inst);
  EXPECT_NEAR(r.pr_find, 1.0, 1e-12);
  EXPECT_NEAR(r.lhs, 1.0, 1e-12);
  EXPECT_NEAR(r.bures_mid, std::sqrt(2.0), 1e-9);
  EXPECT_NEAR(r.rhs, std::sqrt(2.0), 1e-12);
  EXPECT_TRUE(r.holds());
}

TEST(O2H, RandomSweepHolds) {
  Rng rng(7);
  for (int k = 0; k < 200; ++k) {
    const auto r = check_o2h(random_o2h_instance(rng, 6));
    ASSERT_TRUE(r.holds()) << k << ": " << r.lhs << " " << r.bures_mid << " " << r.rhs;
  }
}

// ---------------------------------------------------------------- dom hits

TEST(DomHit, UniformShufflerRate) {
  Rng rng(8);
  const auto r = check_dom_hit(2, 4, {}, 5, 1, 10000, rng);
  EXPECT_NEAR(r.exact, 1.0 / 16, 1e-12);
  const double sigma = std::sqrt(r.exact * (1 - r.exact) / 10000);
  EXPECT_NEAR(r.estimate.rate, r.exact, 3 * sigma);
  EXPECT_TRUE(r.holds);
}

TEST(DomHit, UnrelatedPathLeavesRateUnchanged) {
  Rng rng(9);
  ShufflerBeta beta;
  beta.paths = {{3, 9, 40}};
  const auto r = check_dom_hit(2, 4, beta, 5, 1, 20000, rng);
  EXPECT_NEAR(r.exact, 15.0 / 255, 1e-12);
  const double sigma = std::sqrt(r.exact * (1 - r.exact) / 20000);
  EXPECT_NEAR(r.estimate.rate, r.exact, 3 * sigma);
  // Within one part in N^2 of the unconditioned rate.
  EXPECT_LT(std::abs(r.exact - 1.0 / 16), 1.0 / 256);
}

TEST(DomHit, ExcludedPointNeverHit) {
  Rng rng(10);
  ShufflerBeta beta;
  beta.excluded = {{}, {5}, {}};
  const auto r = check_dom_hit(2, 4, beta, 5, 1, 2000, rng);
  EXPECT_EQ(r.estimate.successes, 0u);
  EXPECT_EQ(r.exact, 0.0);
}

TEST(DomHit, PointNamedByBetaRejected) {
  Rng rng(11);
  ShufflerBeta beta;
  beta.paths = {{3, 5, 40}};
  EXPECT_THROW(check_dom_hit(2, 4, beta, 5, 1, 10, rng), Error);
}

TEST(Shuffler, SuitePasses) {
  const auto rep = verify_shuffler(12, 10, 2000);
  for (const auto& c : rep.checks) EXPECT_TRUE(c.pass) << c.name << " " << c.detail;
}

// ---------------------------------------------------------------- probes

TEST(ShadowProbe, NoOracleCallsGivesZeroDistance) {
  HybridProgram adv;
  adv.model = Model::QNC;
  adv.depth = 2;
  adv.layout.add("Q", 4);
  adv.stages = {stage::unitary(hadamard_layer(adv.layout.qubits("Q"))),
                stage::measure(adv.layout.qubits("Q"), "guess")};
  Rng rng(12);
  const auto inst = sample_serial(2, 4, rng);
  const auto cmp = shadow_compare(adv, inst);
  EXPECT_NEAR(cmp.tv, 0.0, 1e-12);
  EXPECT_NEAR(cmp.bound, 0.0, 1e-12);
  EXPECT_NEAR(cmp.shadow_success, 1.0 / 16, 1e-12);
}

TEST(ShadowProbe, RandomAdversariesStayUnderBound) {
  const auto r = shadow_equivalence_probe(2, 4, 2, 5, 4, 13);
  EXPECT_EQ(r.instances, 20);
  EXPECT_EQ(r.violations, 0);
  EXPECT_LE(r.shadow_success, r.guess + 3 * r.success_sigma + 1e-12);
}

TEST(YDistinct, ProductFormulaMatchesFactorialForm) {
  // 32! / (12! 32^20) via log-gamma.
  const double oracle = std::exp(std::lgamma(33.0) - std::lgamma(13.0) - 20 * std::log(32.0));
  EXPECT_NEAR(y_distinct_probability(6, 20), oracle, 1e-15);
  EXPECT_NEAR(y_distinct_probability(6, 20), 0.00043334642350897353, 1e-15);
  EXPECT_NEAR(y_distinct_probability(4, 4), 0.41015625, 1e-15);
  EXPECT_EQ(y_distinct_probability(4, 9), 0.0);
  EXPECT_EQ(y_distinct_probability(4, 1), 1.0);
}

TEST(ScsProbe, BirthdayCurve) {
  const auto r = scs_hardness_probe(3, 4, 2, 10000, 14);
  EXPECT_EQ(r.stochastic_calls, 4);
  const double sd = std::sqrt(r.p_distinct * (1 - r.p_distinct) / 10000);
  EXPECT_NEAR(r.y_distinct.rate, r.p_distinct, 3 * sd);
  EXPECT_LE(r.collision.rate, r.collision_bound + 3 * sd);
  EXPECT_LE(r.success.rate, r.success_bound + 3 * sd);
  EXPECT_NEAR(r.guess, 1.0 / 15, 1e-15);
}

TEST(ScsProbe, AdversaryDepthCapped) {
  EXPECT_THROW(scs_hardness_probe(2, 4, 3, 10, 1), Error);
}

}  // namespace
}  // namespace hqc
