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

#include "hqc/common.hpp"
#include "hqc/statevec.hpp"

namespace hqc {

inline constexpr int kMaxTableInBits = 24;
inline constexpr int kMaxTableOutBits = 31;

// Total map {0,1}^in_bits -> {0,1}^out_bits + {bottom}, stored densely.
class FunctionTable {
 public:
  FunctionTable() = default;
  FunctionTable(int in_bits, int out_bits);  // every entry bottom

  static FunctionTable identity(int bits);

  int in_bits() const { return in_bits_; }
  int out_bits() const { return out_bits_; }
  std::uint64_t size() const { return entries_.size(); }

  // Image of x, or kBottom.
  std::uint64_t at(std::uint64_t x) const;
  std::uint64_t operator()(std::uint64_t x) const { return at(x); }
  bool defined(std::uint64_t x) const { return at(x) != kBottom; }
  void set(std::uint64_t x, std::uint64_t value);
  void set_bottom(std::uint64_t x);

  bool operator==(const FunctionTable& o) const = default;

 private:
  static constexpr std::uint32_t kBottomEntry = 0xFFFFFFFFu;
  void check_input(std::uint64_t x) const;

  int in_bits_ = 0;
  int out_bits_ = 0;
  std::vector<std::uint32_t> entries_;
};

// Subset of {0,1}^bits as a bitmap.
class DomainSet {
 public:
  DomainSet() = default;
  explicit DomainSet(int bits);
  static DomainSet full(int bits);

  int bits() const { return bits_; }
  bool contains(std::uint64_t x) const { return x < mask_.size() && mask_[x]; }
  void insert(std::uint64_t x);
  void erase(std::uint64_t x);
  std::uint64_t count() const;
  bool empty() const { return count() == 0; }
  std::vector<std::uint64_t> members() const;
  DomainSet minus(const DomainSet& other) const;

  bool operator==(const DomainSet& o) const = default;

 private:
  int bits_ = 0;
  std::vector<bool> mask_;
};

struct OracleBundle {
  std::string label;
  std::vector<FunctionTable> subs;
};

// Per-sub-oracle subsets; a default-constructed set (bits 0) masks nothing.
struct ShadowMask {
  std::vector<DomainSet> sets;

  static ShadowMask none(const OracleBundle& bundle);
  static ShadowMask everything(const OracleBundle& bundle);
  bool masks(int sub, std::uint64_t x) const {
    return sub >= 0 && sub < static_cast<int>(sets.size()) && sets[sub].contains(x);
  }
};

// Oracle that samples a fresh y per application and answers with
// g(b, y) into the payload register and y into the y register.
struct StochasticOracleSpec {
  int query_bits = 1;
  int payload_bits = 0;
  int y_bits = 0;
  std::vector<std::uint64_t> ys;
  std::vector<double> probs;
  std::vector<FunctionTable> payload;  // payload[k] is g(., ys[k])

  void check() const;
  std::size_t draw(Rng& rng) const;
};

struct QueryLedger {
  struct Classical {
    int sub = 0;
    std::uint64_t input = 0;
    std::uint64_t output = 0;
  };
  std::vector<Classical> classical;
  std::vector<int> quantum_applications;  // slots per oracle application
  std::uint64_t total_quantum = 0;        // q-bar

  void record_application(int slots) {
    quantum_applications.push_back(slots);
    total_quantum += static_cast<std::uint64_t>(slots);
  }
};

inline constexpr int kStochasticSub = -1;

// One parallel query: sub-oracle index, query qubits (low bit first) and
// response qubits (payload low bit first, flag qubit last). When
// query_flag >= 0 and that qubit is 1 the query is bottom.
struct Slot {
  int sub = 0;
  std::vector<int> query;
  std::vector<int> response;
  int query_flag = -1;
};

void check_slots(const OracleBundle* bundle, const StochasticOracleSpec* stochastic,
                 const std::vector<Slot>& slots, int num_qubits);

std::uint64_t classical_query(const OracleBundle& bundle, int sub, std::uint64_t x,
                              QueryLedger* ledger = nullptr);

void quantum_apply_inplace(const OracleBundle& bundle, QuantumState& state,
                           const std::vector<Slot>& slots, QueryLedger* ledger = nullptr);
QuantumState quantum_apply(const OracleBundle& bundle, QuantumState state,
                           const std::vector<Slot>& slots, QueryLedger* ledger = nullptr);

OracleBundle make_shadow(const OracleBundle& bundle, const ShadowMask& mask);

// Flips the qubit of register "flag" on branches whose query tuple meets
// the mask, then applies the oracle.
void flagged_apply_inplace(const OracleBundle& bundle, const ShadowMask& mask,
                           QuantumState& state, const std::vector<Slot>& slots,
                           QueryLedger* ledger = nullptr);
QuantumState flagged_apply(const OracleBundle& bundle, const ShadowMask& mask, QuantumState state,
                           const std::vector<Slot>& slots, QueryLedger* ledger = nullptr);

// Weight of the branches whose query tuple meets the mask.
double find_weight(const QuantumState& state, const std::vector<Slot>& slots, const ShadowMask& mask);

// Applies one independent draw per slot; returns the drawn y values.
std::vector<std::uint64_t> stochastic_apply_inplace(const StochasticOracleSpec& spec, QuantumState& state,
                                                    const std::vector<Slot>& slots, Rng& rng,
                                                    QueryLedger* ledger = nullptr);
QuantumState stochastic_apply(const StochasticOracleSpec& spec, QuantumState state,
                              const std::vector<Slot>& slots, Rng& rng, QueryLedger* ledger = nullptr);

struct StochasticAnswer {
  std::uint64_t payload = 0;
  std::uint64_t y = 0;
};
StochasticAnswer stochastic_classical(const StochasticOracleSpec& spec, std::uint64_t b, Rng& rng,
                                      QueryLedger* ledger = nullptr);

}  // namespace hqc
