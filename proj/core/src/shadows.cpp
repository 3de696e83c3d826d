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

#include <algorithm>
#include <set>

#include "hqc/problems.hpp"

namespace hqc {

ShadowMask ShadowSets::to_mask(const OracleBundle& bundle) const {
  ShadowMask m = ShadowMask::none(bundle);
  if (components.size() + 1 > bundle.subs.size())
    throw Error(ErrorKind::Precondition, "shadow tuple longer than the bundle");
  for (std::size_t i = 0; i < components.size(); ++i)
    if (components[i].bits() == bundle.subs[i + 1].in_bits()) m.sets[i + 1] = components[i];
  return m;
}

ShadowSets shadow_sets_serial(int j, const SerialInstance& inst) {
  const int d = inst.c;
  if (j < 1 || j > d) throw Error(ErrorKind::Range, "hybrid index j outside [1, d]");
  const int n = inst.n;
  const std::uint64_t N = std::uint64_t{1} << n;
  ShadowSets out;
  for (int k = 1; k <= d; ++k) {
    DomainSet set(2 * n);
    if (k >= j)
      for (std::uint64_t x = 0; x < N; ++x) set.insert(pack_pair(x, inst.s[k - 1], n));
    out.components.push_back(std::move(set));
  }
  return out;
}

ShadowSets shadow_sets_ss(int j, const ShufflerInstance& xi,
                          const std::vector<std::vector<std::uint64_t>>& exposed) {
  const int d = xi.d;
  if (j < 1 || j > d) throw Error(ErrorKind::Range, "hybrid index j outside [1, d]");
  for (const auto& y : exposed) {
    if (y.size() < static_cast<std::size_t>(d + 1) || y[0] >= xi.N())
      throw Error(ErrorKind::Precondition, "exposed element is not a path");
    const std::size_t k = y[0];
    for (int i = 0; i < d; ++i)
      if (y[i + 1] != xi.t(i)[k]) throw Error(ErrorKind::Precondition, "exposed element is not a path");
    if (y.size() > static_cast<std::size_t>(d + 1) && y[d + 1] != xi.t(d)[k])
      throw Error(ErrorKind::Precondition, "exposed element is not a path");
  }
  ShadowSets out;
  for (int i = 1; i <= d; ++i) {
    DomainSet set(2 * xi.n);
    if (i >= j) {
      set = xi.dom(i);
      // Sub-oracle i reads the path entry that feeds it: position i of the vector.
      for (const auto& y : exposed) set.erase(y[i]);
    }
    out.components.push_back(std::move(set));
  }
  return out;
}

ShadowMask ScsMasks::to_mask(const SCSInstance& inst) const {
  ShadowMask m = ShadowMask::none(inst.bundle());
  m.sets[inst.p_prime_sub()] = p_prime;
  m.sets[inst.p_prime_inv_sub()] = p_prime_inv;
  return m;
}

ScsMasks shadow_sets_scs(const SCSInstance& inst, const std::vector<std::uint64_t>& revealed_x,
                         const std::vector<std::uint64_t>& revealed_y) {
  const int n = inst.n;
  const std::uint64_t N = std::uint64_t{1} << n;
  std::set<std::uint64_t> R(revealed_x.begin(), revealed_x.end());
  const std::set<std::uint64_t> H(revealed_y.begin(), revealed_y.end());
  for (std::uint64_t x : R)
    if (x >= N) throw Error(ErrorKind::Width, "revealed x outside {0,1}^n");

  std::vector<std::uint64_t> partner(N);
  {
    const auto pre = collision_pairs(inst.f, nullptr);
    for (std::uint64_t x = 0; x < N; ++x) {
      const auto& pr = pre[inst.f.at(x)];
      partner[x] = pr.first == x ? pr.second : pr.first;
    }
  }
  bool complete = false;
  for (std::uint64_t x : R)
    if (H.count(inst.f.at(x)) && R.count(partner[x])) complete = true;
  if (complete) {
    std::vector<std::uint64_t> add;
    for (std::uint64_t x : R)
      if (H.count(inst.f.at(x))) add.push_back(partner[x]);
    R.insert(add.begin(), add.end());
  }

  ScsMasks out;
  out.p_prime = DomainSet(2 * n);
  out.p_prime_inv = DomainSet(2 * n);
  for (std::uint64_t x = 0; x < N; ++x) {
    if (R.count(x)) continue;
    const std::uint64_t key = inst.h.at(inst.f.at(x));
    out.p_prime.insert(pack_pair(key, x, n));
    out.p_prime_inv.insert(pack_pair(key, inst.p.at(x), n));
  }
  out.exposed_x.assign(R.begin(), R.end());
  return out;
}

}  // namespace hqc
