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

#include "hqc/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace hqc {

// ---------------------------------------------------------------- FunctionTable

FunctionTable::FunctionTable(int in_bits, int out_bits) : in_bits_(in_bits), out_bits_(out_bits) {
  if (in_bits < 0 || in_bits > kMaxTableInBits)
    throw Error(ErrorKind::Width, "table input width must be in [0, 24]");
  if (out_bits < 0 || out_bits > kMaxTableOutBits)
    throw Error(ErrorKind::Width, "table output width must be in [0, 31]");
  entries_.assign(std::size_t{1} << in_bits, kBottomEntry);
}

FunctionTable FunctionTable::identity(int bits) {
  FunctionTable t(bits, bits);
  for (std::uint64_t x = 0; x < t.size(); ++x) t.set(x, x);
  return t;
}

void FunctionTable::check_input(std::uint64_t x) const {
  if (x >= entries_.size()) throw Error(ErrorKind::Width, "query does not fit the table's input width");
}

std::uint64_t FunctionTable::at(std::uint64_t x) const {
  check_input(x);
  const auto v = entries_[x];
  return v == kBottomEntry ? kBottom : v;
}

void FunctionTable::set(std::uint64_t x, std::uint64_t value) {
  check_input(x);
  if (value == kBottom) {
    entries_[x] = kBottomEntry;
    return;
  }
  if (value > low_mask(out_bits_)) throw Error(ErrorKind::Width, "value does not fit the output width");
  entries_[x] = static_cast<std::uint32_t>(value);
}

void FunctionTable::set_bottom(std::uint64_t x) {
  check_input(x);
  entries_[x] = kBottomEntry;
}

// ---------------------------------------------------------------- DomainSet

DomainSet::DomainSet(int bits) : bits_(bits) {
  if (bits < 0 || bits > kMaxTableInBits) throw Error(ErrorKind::Width, "domain width must be in [0, 24]");
  mask_.assign(std::size_t{1} << bits, false);
}

DomainSet DomainSet::full(int bits) {
  DomainSet d(bits);
  d.mask_.assign(d.mask_.size(), true);
  return d;
}

void DomainSet::insert(std::uint64_t x) {
  if (x >= mask_.size()) throw Error(ErrorKind::Width, "element outside the domain");
  mask_[x] = true;
}

void DomainSet::erase(std::uint64_t x) {
  if (x < mask_.size()) mask_[x] = false;
}

std::uint64_t DomainSet::count() const {
  return static_cast<std::uint64_t>(std::count(mask_.begin(), mask_.end(), true));
}

std::vector<std::uint64_t> DomainSet::members() const {
  std::vector<std::uint64_t> m;
  for (std::uint64_t x = 0; x < mask_.size(); ++x)
    if (mask_[x]) m.push_back(x);
  return m;
}

DomainSet DomainSet::minus(const DomainSet& other) const {
  DomainSet d = *this;
  for (std::uint64_t x = 0; x < d.mask_.size(); ++x)
    if (other.contains(x)) d.mask_[x] = false;
  return d;
}

ShadowMask ShadowMask::none(const OracleBundle& bundle) {
  ShadowMask m;
  for (const auto& t : bundle.subs) m.sets.emplace_back(t.in_bits());
  return m;
}

ShadowMask ShadowMask::everything(const OracleBundle& bundle) {
  ShadowMask m;
  for (const auto& t : bundle.subs) m.sets.push_back(DomainSet::full(t.in_bits()));
  return m;
}

// ---------------------------------------------------------------- stochastic spec

void StochasticOracleSpec::check() const {
  if (ys.empty() || ys.size() != probs.size() || ys.size() != payload.size())
    throw Error(ErrorKind::Precondition, "stochastic oracle support is inconsistent");
  double total = 0;
  for (double p : probs) {
    if (p < 0) throw Error(ErrorKind::Precondition, "negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw Error(ErrorKind::Precondition, "y distribution does not sum to 1");
  for (const auto& t : payload)
    if (t.in_bits() != query_bits || t.out_bits() != payload_bits)
      throw Error(ErrorKind::Width, "payload table shape mismatch");
}

std::size_t StochasticOracleSpec::draw(Rng& rng) const {
  std::discrete_distribution<std::size_t> dist(probs.begin(), probs.end());
  return dist(rng);
}

// ---------------------------------------------------------------- slots

void check_slots(const OracleBundle* bundle, const StochasticOracleSpec* stochastic,
                 const std::vector<Slot>& slots, int num_qubits) {
  std::uint64_t used = 0;
  auto claim = [&](int q) {
    if (q < 0 || q >= num_qubits) throw Error(ErrorKind::Range, "slot qubit out of range");
    const std::uint64_t m = std::uint64_t{1} << q;
    if (used & m) throw Error(ErrorKind::RegisterOverlap, "slot registers overlap on qubit " + std::to_string(q));
    used |= m;
  };
  for (const auto& s : slots) {
    if (s.sub == kStochasticSub) {
      if (!stochastic) throw Error(ErrorKind::Precondition, "no stochastic oracle available");
      if (static_cast<int>(s.query.size()) != stochastic->query_bits ||
          static_cast<int>(s.response.size()) != stochastic->payload_bits + stochastic->y_bits)
        throw Error(ErrorKind::Width, "stochastic slot width mismatch");
    } else {
      if (!bundle || s.sub < 0 || s.sub >= static_cast<int>(bundle->subs.size()))
        throw Error(ErrorKind::Range, "slot addresses a missing sub-oracle");
      const auto& t = bundle->subs[s.sub];
      if (static_cast<int>(s.query.size()) != t.in_bits())
        throw Error(ErrorKind::Width, "query register width differs from the sub-oracle input");
      if (static_cast<int>(s.response.size()) != t.out_bits() + 1)
        throw Error(ErrorKind::Width, "response register must hold the payload plus one flag qubit");
    }
    for (int q : s.query) claim(q);
    for (int q : s.response) claim(q);
    if (s.query_flag >= 0) claim(s.query_flag);
  }
}

std::uint64_t classical_query(const OracleBundle& bundle, int sub, std::uint64_t x, QueryLedger* ledger) {
  if (sub < 0 || sub >= static_cast<int>(bundle.subs.size()))
    throw Error(ErrorKind::Range, "no such sub-oracle");
  const auto& t = bundle.subs[sub];
  if (t.in_bits() < 64 && (x >> t.in_bits()) != 0)
    throw Error(ErrorKind::Width, "query does not fit the sub-oracle input width");
  const std::uint64_t v = t.at(x);
  if (ledger) ledger->classical.push_back({sub, x, v});
  return v;
}

namespace {

std::uint64_t encode(std::uint64_t v, int out_bits) {
  return v == kBottom ? (std::uint64_t{1} << out_bits) : v;
}

std::uint64_t slot_query(std::uint64_t idx, const Slot& s, bool& bottom) {
  bottom = s.query_flag >= 0 && ((idx >> s.query_flag) & 1u);
  return gather_bits(idx, s.query);
}

std::uint64_t apply_slots(const OracleBundle& bundle, const std::vector<Slot>& slots, std::uint64_t idx) {
  std::uint64_t out = idx;
  for (const auto& s : slots) {
    bool bottom = false;
    const std::uint64_t q = slot_query(idx, s, bottom);
    const auto& t = bundle.subs[s.sub];
    const std::uint64_t v = bottom ? kBottom : t.at(q);
    out ^= scatter_bits(encode(v, t.out_bits()), s.response);
  }
  return out;
}

}  // namespace

void quantum_apply_inplace(const OracleBundle& bundle, QuantumState& state, const std::vector<Slot>& slots,
                           QueryLedger* ledger) {
  check_slots(&bundle, nullptr, slots, state.num_qubits());
  permute_basis(state, [&](std::uint64_t idx) { return apply_slots(bundle, slots, idx); });
  if (ledger) ledger->record_application(static_cast<int>(slots.size()));
}

QuantumState quantum_apply(const OracleBundle& bundle, QuantumState state, const std::vector<Slot>& slots,
                           QueryLedger* ledger) {
  quantum_apply_inplace(bundle, state, slots, ledger);
  return state;
}

OracleBundle make_shadow(const OracleBundle& bundle, const ShadowMask& mask) {
  OracleBundle g = bundle;
  g.label = bundle.label + "/shadow";
  for (std::size_t i = 0; i < g.subs.size() && i < mask.sets.size(); ++i) {
    const auto& set = mask.sets[i];
    if (set.bits() == 0 && g.subs[i].in_bits() != 0) continue;
    if (set.bits() != g.subs[i].in_bits())
      throw Error(ErrorKind::Width, "mask width differs from sub-oracle input width");
    for (std::uint64_t x : set.members()) g.subs[i].set_bottom(x);
  }
  return g;
}

namespace {

bool hits(std::uint64_t idx, const std::vector<Slot>& slots, const ShadowMask& mask) {
  for (const auto& s : slots) {
    bool bottom = false;
    const std::uint64_t q = slot_query(idx, s, bottom);
    if (!bottom && mask.masks(s.sub, q)) return true;
  }
  return false;
}

int flag_qubit(const QuantumState& state) {
  if (!state.layout().has("flag")) throw Error(ErrorKind::MissingFlag, "state has no 'flag' register");
  const auto& r = state.layout().get("flag");
  if (r.width != 1) throw Error(ErrorKind::MissingFlag, "'flag' register must be one qubit");
  return r.offset;
}

}  // namespace

void flagged_apply_inplace(const OracleBundle& bundle, const ShadowMask& mask, QuantumState& state,
                           const std::vector<Slot>& slots, QueryLedger* ledger) {
  const int b = flag_qubit(state);
  check_slots(&bundle, nullptr, slots, state.num_qubits());
  for (const auto& s : slots) {
    const bool uses = std::count(s.query.begin(), s.query.end(), b) ||
                      std::count(s.response.begin(), s.response.end(), b) || s.query_flag == b;
    if (uses) throw Error(ErrorKind::RegisterOverlap, "slot uses the flag qubit");
  }
  permute_basis(state, [&](std::uint64_t idx) {
    return hits(idx, slots, mask) ? (idx ^ (std::uint64_t{1} << b)) : idx;
  });
  quantum_apply_inplace(bundle, state, slots, ledger);
}

QuantumState flagged_apply(const OracleBundle& bundle, const ShadowMask& mask, QuantumState state,
                           const std::vector<Slot>& slots, QueryLedger* ledger) {
  flagged_apply_inplace(bundle, mask, state, slots, ledger);
  return state;
}

double find_weight(const QuantumState& state, const std::vector<Slot>& slots, const ShadowMask& mask) {
  return probability_if(state, [&](std::uint64_t idx) { return hits(idx, slots, mask); });
}

std::vector<std::uint64_t> stochastic_apply_inplace(const StochasticOracleSpec& spec, QuantumState& state,
                                                    const std::vector<Slot>& slots, Rng& rng,
                                                    QueryLedger* ledger) {
  check_slots(nullptr, &spec, slots, state.num_qubits());
  std::vector<std::size_t> draws;
  std::vector<std::uint64_t> ys;
  for (std::size_t k = 0; k < slots.size(); ++k) {
    draws.push_back(spec.draw(rng));
    ys.push_back(spec.ys[draws.back()]);
  }
  permute_basis(state, [&](std::uint64_t idx) {
    std::uint64_t out = idx;
    for (std::size_t k = 0; k < slots.size(); ++k) {
      const auto& s = slots[k];
      const auto& g = spec.payload[draws[k]];
      const std::uint64_t v = g.at(gather_bits(idx, s.query));
      const std::uint64_t word = (v == kBottom ? 0 : v) | (ys[k] << spec.payload_bits);
      out ^= scatter_bits(word, s.response);
    }
    return out;
  });
  if (ledger) ledger->record_application(static_cast<int>(slots.size()));
  return ys;
}

QuantumState stochastic_apply(const StochasticOracleSpec& spec, QuantumState state, const std::vector<Slot>& slots,
                              Rng& rng, QueryLedger* ledger) {
  stochastic_apply_inplace(spec, state, slots, rng, ledger);
  return state;
}

StochasticAnswer stochastic_classical(const StochasticOracleSpec& spec, std::uint64_t b, Rng& rng,
                                      QueryLedger* ledger) {
  const std::size_t k = spec.draw(rng);
  StochasticAnswer a{spec.payload[k].at(b), spec.ys[k]};
  if (ledger) ledger->classical.push_back({kStochasticSub, b, a.payload | (a.y << spec.payload_bits)});
  return a;
}

}  // namespace hqc
