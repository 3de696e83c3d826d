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

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hqc/common.hpp"

namespace hqc {

using cplx = std::complex<double>;

inline constexpr int kMaxQubits = 63;
inline constexpr int kMaxDensityQubits = 10;
inline constexpr double kNormTolerance = 1e-9;

struct Register {
  std::string name;
  int offset = 0;
  int width = 0;
};

// Named contiguous qubit ranges. Qubit q is bit q of a basis index.
class RegisterLayout {
 public:
  RegisterLayout() = default;

  // Appends a register after the highest qubit in use; returns its offset.
  int add(const std::string& name, int width);
  // Places a register explicitly; overlap is allowed here and reported by disjoint().
  void place(const std::string& name, int offset, int width);

  bool has(const std::string& name) const;
  const Register& get(const std::string& name) const;
  std::vector<int> qubits(const std::string& name) const;
  int qubit(const std::string& name, int j) const;
  int num_qubits() const { return num_qubits_; }
  bool disjoint() const;
  const std::vector<Register>& registers() const { return regs_; }

  // Value held by a register in basis state `index`.
  std::uint64_t read(std::uint64_t index, const std::string& name) const;

 private:
  std::vector<Register> regs_;
  int num_qubits_ = 0;
};

std::uint64_t gather_bits(std::uint64_t index, const std::vector<int>& qubits);
std::uint64_t scatter_bits(std::uint64_t value, const std::vector<int>& qubits);

// Normalized pure state. Amplitudes are stored sparsely as (basis index,
// amplitude) pairs sorted by index; absent indices have amplitude zero.
class QuantumState {
 public:
  using Entry = std::pair<std::uint64_t, cplx>;

  QuantumState() = default;
  explicit QuantumState(int num_qubits, std::uint64_t basis_index = 0);
  explicit QuantumState(const RegisterLayout& layout, std::uint64_t basis_index = 0);

  static QuantumState from_amplitudes(int num_qubits, const std::vector<cplx>& amps);
  static QuantumState from_entries(int num_qubits, std::vector<Entry> entries);

  int num_qubits() const { return num_qubits_; }
  const RegisterLayout& layout() const { return layout_; }
  void set_layout(const RegisterLayout& layout);

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t support_size() const { return entries_.size(); }
  cplx amplitude(std::uint64_t index) const;
  double norm2() const;
  std::vector<cplx> dense() const;

  // Sorts, merges duplicate indices and drops negligible amplitudes.
  void assign(std::vector<Entry> entries);
  void renormalize();

 private:
  int num_qubits_ = 0;
  RegisterLayout layout_;
  std::vector<Entry> entries_;
};

struct Gate {
  std::vector<int> targets;   // one or two qubits
  std::vector<cplx> matrix;   // row-major 2x2 or 4x4; for two qubits the
                              // local index is 2*b(targets[0]) + b(targets[1])
};

struct GateLayer {
  std::vector<Gate> gates;
  bool empty() const { return gates.empty(); }
};

namespace gates {
Gate unitary1(int q, const std::vector<cplx>& m);
Gate unitary2(int q0, int q1, const std::vector<cplx>& m);
Gate H(int q);
Gate X(int q);
Gate Z(int q);
Gate CNOT(int control, int target);
// Haar-random 1- or 2-qubit unitary.
Gate random1(int q, Rng& rng);
Gate random2(int q0, int q1, Rng& rng);
// Product gate b*a on one qubit (a applied first).
Gate then(const Gate& a, const Gate& b);
}  // namespace gates

GateLayer hadamard_layer(const std::vector<int>& qubits);

// Throws Error(Range) / Error(LayerInvalid) when the layer is unusable on num_qubits.
void check_layer(const GateLayer& layer, int num_qubits);

void apply_layer_inplace(QuantumState& state, const GateLayer& layer);
QuantumState apply_layer(QuantumState state, const GateLayer& layer);

// Maps every basis index through `f`, which must be injective on the support.
template <class F>
void permute_basis(QuantumState& state, F&& f) {
  std::vector<QuantumState::Entry> out;
  out.reserve(state.entries().size());
  for (const auto& [idx, amp] : state.entries()) out.emplace_back(f(idx), amp);
  state.assign(std::move(out));
}

struct Measurement {
  std::uint64_t outcome = 0;   // bit j is the result on qubits[j]
  double probability = 0.0;
  QuantumState post;
};

std::vector<std::pair<std::uint64_t, double>> outcome_distribution(
    const QuantumState& state, const std::vector<int>& qubits);
Measurement measure(const QuantumState& state, const std::vector<int>& qubits, Rng& rng);
Measurement measure_outcome(const QuantumState& state, const std::vector<int>& qubits,
                            std::uint64_t outcome);
Measurement measure_all(const QuantumState& state, Rng& rng);
// Probability that the projector onto basis indices satisfying `pred` fires.
template <class P>
double probability_if(const QuantumState& state, P&& pred) {
  double p = 0.0;
  for (const auto& [idx, amp] : state.entries())
    if (pred(idx)) p += std::norm(amp);
  return p;
}

QuantumState random_state(int num_qubits, Rng& rng);

struct Ensemble {
  std::vector<std::pair<double, QuantumState>> members;

  Ensemble() = default;
  Ensemble(const QuantumState& pure) { members.emplace_back(1.0, pure); }  // NOLINT
  void add(double p, QuantumState s) { members.emplace_back(p, std::move(s)); }
  int num_qubits() const;
  // Throws Error(Precondition) if the invariants are violated.
  void check() const;
};

cplx inner(const QuantumState& a, const QuantumState& b);

double fidelity(const QuantumState& a, const QuantumState& b);
double fidelity(const Ensemble& a, const Ensemble& b);
double bures(const QuantumState& a, const QuantumState& b);
double bures(const Ensemble& a, const Ensemble& b);
double trace_distance(const QuantumState& a, const QuantumState& b);
double trace_distance(const Ensemble& a, const Ensemble& b);

}  // namespace hqc
