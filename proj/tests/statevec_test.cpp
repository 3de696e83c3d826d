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
#include <numbers>

#include <gtest/gtest.h>

#include "hqc/statevec.hpp"

namespace hqc {
namespace {

constexpr double kTol = 1e-9;
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

QuantumState plus() { return apply_layer(QuantumState(1), hadamard_layer({0})); }

TEST(StateVec, HadamardOnZero) {
  const auto s = plus();
  EXPECT_NEAR(std::abs(s.amplitude(0) - cplx(kInvSqrt2)), 0, kTol);
  EXPECT_NEAR(std::abs(s.amplitude(1) - cplx(kInvSqrt2)), 0, kTol);
}

TEST(StateVec, EmptyLayerIsIdentity) {
  Rng rng(1);
  const auto s = random_state(5, rng);
  const auto t = apply_layer(s, GateLayer{});
  EXPECT_NEAR(fidelity(s, t), 1.0, kTol);
  EXPECT_EQ(s.support_size(), t.support_size());
}

TEST(StateVec, CnotTruthTable) {
  // |10> in qubit order: qubit 0 set.
  GateLayer layer;
  layer.gates.push_back(gates::CNOT(0, 1));
  const auto s = apply_layer(QuantumState(2, 1), layer);
  EXPECT_NEAR(std::norm(s.amplitude(3)), 1.0, kTol);
}

TEST(StateVec, NormPreservedOverRandomLayers) {
  Rng rng(2);
  for (int k = 0; k < 1000; ++k) {
    auto s = random_state(8, rng);
    GateLayer layer;
    std::vector<int> q{0, 1, 2, 3, 4, 5, 6, 7};
    std::shuffle(q.begin(), q.end(), rng);
    layer.gates.push_back(gates::random2(q[0], q[1], rng));
    layer.gates.push_back(gates::random2(q[2], q[3], rng));
    layer.gates.push_back(gates::random1(q[4], rng));
    layer.gates.push_back(gates::random1(q[5], rng));
    apply_layer_inplace(s, layer);
    ASSERT_LE(std::abs(s.norm2() - 1.0), kTol);
  }
}

TEST(StateVec, OverlappingTargetsRejected) {
  GateLayer layer;
  layer.gates.push_back(gates::H(0));
  layer.gates.push_back(gates::CNOT(0, 1));
  try {
    check_layer(layer, 2);
    FAIL() << "overlap accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::LayerInvalid);
  }
}

TEST(StateVec, OutOfRangeTargetRejected) {
  try {
    apply_layer(QuantumState(2), hadamard_layer({2}));
    FAIL() << "range accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Range);
  }
}

TEST(StateVec, MeasureBasisState) {
  Rng rng(3);
  const auto m = measure(QuantumState(1, 1), {0}, rng);
  EXPECT_EQ(m.outcome, 1u);
  EXPECT_NEAR(m.probability, 1.0, kTol);
  EXPECT_NEAR(std::norm(m.post.amplitude(1)), 1.0, kTol);
}

TEST(StateVec, MeasureBornFrequency) {
  const auto s = plus();
  int zeros = 0;
  for (int t = 0; t < 10000; ++t) {
    Rng rng(static_cast<std::uint64_t>(t));
    zeros += measure(s, {0}, rng).outcome == 0;
  }
  EXPECT_NEAR(zeros / 10000.0, 0.5, 0.02);
}

TEST(StateVec, MeasureBellProjects) {
  QuantumState bell = QuantumState::from_entries(2, {{0, cplx(kInvSqrt2)}, {3, cplx(kInvSqrt2)}});
  const auto m = measure_outcome(bell, {1}, 1);
  EXPECT_NEAR(m.probability, 0.5, kTol);
  EXPECT_NEAR(std::norm(m.post.amplitude(3)), 1.0, kTol);
}

TEST(StateVec, ImpossibleOutcomeRejected) {
  try {
    measure_outcome(QuantumState(1), {0}, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ImpossibleOutcome);
  }
}

TEST(StateVec, PartialOutcomePackedInQubitOrder) {
  // qubits 1 and 3 set; asking for (3, 1) packs bit 0 <- qubit 3.
  const auto m = measure_outcome(QuantumState(4, 0b1010), {3, 0}, 0b01);
  EXPECT_NEAR(m.probability, 1.0, kTol);
}

TEST(StateVec, RemeasureIsIdempotent) {
  Rng rng(4);
  for (int t = 0; t < 100; ++t) {
    const auto s = random_state(4, rng);
    const auto a = measure(s, {0, 2}, rng);
    const auto b = measure(a.post, {0, 2}, rng);
    EXPECT_EQ(a.outcome, b.outcome);
    EXPECT_NEAR(b.probability, 1.0, kTol);
    EXPECT_NEAR(fidelity(a.post, b.post), 1.0, kTol);
  }
}

TEST(StateVec, FidelityExamples) {
  const QuantumState zero(1), one(1, 1);
  EXPECT_NEAR(fidelity(zero, zero), 1.0, kTol);
  EXPECT_NEAR(fidelity(zero, one), 0.0, kTol);
  EXPECT_NEAR(fidelity(zero, plus()), kInvSqrt2, kTol);
}

TEST(StateVec, BuresAndTraceDistanceExamples) {
  const QuantumState zero(1), one(1, 1);
  EXPECT_NEAR(bures(zero, zero), 0.0, kTol);
  EXPECT_NEAR(bures(zero, one), std::numbers::sqrt2, kTol);
  EXPECT_NEAR(trace_distance(zero, plus()), kInvSqrt2, kTol);
}

TEST(StateVec, EnsembleDistancesMatchPureForms) {
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    const auto a = random_state(3, rng), b = random_state(3, rng), c = random_state(3, rng);
    Ensemble ea, eb;
    ea.add(0.3, a);
    ea.add(0.7, b);
    eb.add(0.3, a);
    eb.add(0.7, c);
    // Shared labels: F of the mixtures is at least the labelled average.
    const double avg = 0.3 + 0.7 * fidelity(b, c);
    EXPECT_GE(fidelity(ea, eb) + kTol, avg);
    const double bu = bures(ea, eb);
    EXPECT_NEAR(bu * bu, 2 - 2 * fidelity(ea, eb), 1e-7);
    EXPECT_NEAR(bures(Ensemble(a), Ensemble(b)), bures(a, b), kTol);
  }
}

TEST(StateVec, DistinguishabilityBoundedByBures) {
  Rng rng(6);
  for (int t = 0; t < 1000; ++t) {
    const auto a = random_state(6, rng), b = random_state(6, rng);
    const std::uint64_t proj = rng();  // bit i of a 64-bit word selects basis index i
    double pa = 0, pb = 0;
    for (std::uint64_t i = 0; i < 64; ++i)
      if (proj >> i & 1u) {
        pa += std::norm(a.amplitude(i));
        pb += std::norm(b.amplitude(i));
      }
    ASSERT_LE(std::abs(pa - pb), bures(a, b) + kTol);
  }
}

TEST(StateVec, EnsembleChecksProbabilities) {
  Ensemble e;
  e.add(0.5, QuantumState(1));
  e.add(0.4, QuantumState(1, 1));
  EXPECT_THROW(e.check(), Error);
}

TEST(Layout, RegistersAndRead) {
  RegisterLayout l;
  l.add("Q", 3);
  l.add("R", 2);
  EXPECT_EQ(l.num_qubits(), 5);
  EXPECT_TRUE(l.disjoint());
  EXPECT_EQ(l.read(0b10110, "Q"), 0b110u);
  EXPECT_EQ(l.read(0b10110, "R"), 0b10u);
  l.place("W", 2, 2);
  EXPECT_FALSE(l.disjoint());
}

TEST(Layout, GatherScatterRoundTrip) {
  const std::vector<int> q{4, 1, 6};
  for (std::uint64_t v = 0; v < 8; ++v) EXPECT_EQ(gather_bits(scatter_bits(v, q), q), v);
}

}  // namespace
}  // namespace hqc
