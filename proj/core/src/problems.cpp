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

#include "hqc/problems.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace hqc {

namespace {

void require_n(int n, int cap, const char* what) {
  if (n < 1 || n > cap) throw Error(ErrorKind::Unsupported, std::string(what) + ": n outside supported range");
}

std::vector<std::uint64_t> shuffled_range(std::uint64_t size, Rng& rng) {
  std::vector<std::uint64_t> v(size);
  std::iota(v.begin(), v.end(), 0);
  std::shuffle(v.begin(), v.end(), rng);
  return v;
}

// `count` distinct values from [0, universe) in draw order.
std::vector<std::uint64_t> distinct_draws(std::uint64_t count, std::uint64_t universe, Rng& rng) {
  std::uniform_int_distribution<std::uint64_t> pick(0, universe - 1);
  std::unordered_set<std::uint64_t> seen;
  std::vector<std::uint64_t> out;
  out.reserve(count);
  while (out.size() < count) {
    const std::uint64_t v = pick(rng);
    if (seen.insert(v).second) out.push_back(v);
  }
  return out;
}

}  // namespace

FunctionTable sample_one_to_one(int n, Rng& rng) {
  require_n(n, kMaxTableInBits, "one-to-one");
  const auto perm = shuffled_range(std::uint64_t{1} << n, rng);
  FunctionTable t(n, n);
  for (std::uint64_t x = 0; x < perm.size(); ++x) t.set(x, perm[x]);
  return t;
}

SimonInstance sample_simon(int n, Rng& rng) {
  require_n(n, kMaxTableInBits, "simon");
  const std::uint64_t N = std::uint64_t{1} << n;
  SimonInstance inst;
  inst.n = n;
  inst.s = std::uniform_int_distribution<std::uint64_t>(1, N - 1)(rng);
  const auto images = shuffled_range(N, rng);
  inst.table = FunctionTable(n, n);
  std::uint64_t next = 0;
  for (std::uint64_t x = 0; x < N; ++x) {
    const std::uint64_t partner = x ^ inst.s;
    if (partner < x) continue;
    inst.table.set(x, images[next]);
    inst.table.set(partner, images[next]);
    ++next;
  }
  return inst;
}

FunctionTable sample_two_to_one(int n, Rng& rng) {
  require_n(n, kMaxTableInBits, "two-to-one");
  const std::uint64_t N = std::uint64_t{1} << n;
  const auto order = shuffled_range(N, rng);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  for (std::uint64_t k = 0; k < N; k += 2)
    pairs.emplace_back(std::min(order[k], order[k + 1]), std::max(order[k], order[k + 1]));
  std::sort(pairs.begin(), pairs.end());
  const auto images = shuffled_range(N, rng);
  FunctionTable t(n, n);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    t.set(pairs[k].first, images[k]);
    t.set(pairs[k].second, images[k]);
  }
  return t;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> collision_pairs(const FunctionTable& f,
                                                                    std::vector<std::uint64_t>* images) {
  const std::uint64_t N = f.size();
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pre(std::uint64_t{1} << f.out_bits(), {kBottom, kBottom});
  for (std::uint64_t x = 0; x < N; ++x) {
    const std::uint64_t y = f.at(x);
    if (y == kBottom) throw Error(ErrorKind::Precondition, "two-to-one table has an undefined entry");
    auto& p = pre[y];
    if (p.first == kBottom) {
      p.first = x;
    } else if (p.second == kBottom) {
      p.second = x;
    } else {
      throw Error(ErrorKind::Precondition, "image with more than two pre-images");
    }
  }
  if (images) images->clear();
  for (std::uint64_t y = 0; y < pre.size(); ++y) {
    if (pre[y].first == kBottom) continue;
    if (pre[y].second == kBottom) throw Error(ErrorKind::Precondition, "image with a single pre-image");
    if (images) images->push_back(y);
  }
  return pre;
}

GenericProblem GenericProblem::simon() {
  GenericProblem g;
  g.sample_o = [](int n, Rng& rng) {
    auto inst = sample_simon(n, rng);
    return std::make_pair(std::move(inst.table), inst.s);
  };
  g.sample_r = [](int n, Rng& rng) { return sample_one_to_one(n, rng); };
  return g;
}

FunctionTable serial_level_table(const FunctionTable& f, int n, bool gated, std::uint64_t key) {
  if (f.in_bits() != n) throw Error(ErrorKind::Width, "level function must take n bits");
  FunctionTable L(2 * n, f.out_bits());
  const std::uint64_t N = std::uint64_t{1} << n;
  for (std::uint64_t x = 0; x < N; ++x)
    for (std::uint64_t z = 0; z < N; ++z)
      if (!gated || z == key) L.set(pack_pair(x, z, n), f.at(x));
  return L;
}

OracleBundle SerialInstance::bundle() const {
  OracleBundle b;
  b.label = "serial";
  b.subs = L;
  return b;
}

SerialInstance sample_serial(int c, int n, Rng& rng, Variant variant, const GenericProblem& inner) {
  if (c < 1) throw Error(ErrorKind::Precondition, "serial chain needs c >= 1");
  require_n(n, kMaxTableInBits / 2, "serial");
  SerialInstance inst;
  inst.c = c;
  inst.n = n;
  inst.variant = variant;
  for (int i = 0; i < c; ++i) {
    auto level = sample_simon(n, rng);
    inst.f.push_back(std::move(level.table));
    inst.s.push_back(level.s);
  }
  bool use_r = false;
  if (variant == Variant::Decision) {
    inst.label = static_cast<int>(rng() & 1u);
    use_r = inst.label == 1;
  }
  if (use_r) {
    inst.f.push_back(inner.sample_r(n, rng));
    inst.answer = 0;
  } else {
    auto [table, r] = inner.sample_o(n, rng);
    inst.f.push_back(std::move(table));
    inst.answer = r;
  }
  inst.L.push_back(serial_level_table(inst.f[0], n, false, 0));
  for (int i = 1; i <= c; ++i) inst.L.push_back(serial_level_table(inst.f[i], n, true, inst.s[i - 1]));
  return inst;
}

// ---------------------------------------------------------------- d-Shuffler

DomainSet ShufflerInstance::dom(int i) const {
  if (i < 0 || i > d) throw Error(ErrorKind::Range, "domain index outside [0, d]");
  DomainSet s(2 * n);
  for (std::uint64_t v : t(i - 1)) s.insert(v);
  return s;
}

std::uint64_t ShufflerInstance::evaluate(std::uint64_t x) const {
  std::uint64_t v = x;
  for (const auto& f : funcs) {
    if (v == kBottom) return kBottom;
    v = f.at(v);
  }
  return v;
}

OracleBundle ShufflerInstance::bundle() const {
  OracleBundle b;
  b.label = "shuffler";
  b.subs = funcs;
  return b;
}

std::vector<std::uint64_t> ShufflerInstance::path(std::size_t k) const {
  std::vector<std::uint64_t> p;
  for (int i = -1; i < d; ++i) p.push_back(t(i).at(k));
  return p;
}

ShufflerInstance shuffler_from_tuples(int d, int n, std::vector<std::vector<std::uint64_t>> tuples,
                                      const FunctionTable& f) {
  if (d < 1) throw Error(ErrorKind::Precondition, "shuffler depth must be >= 1");
  require_n(n, kMaxShufflerN, "shuffler");
  if (f.in_bits() != n) throw Error(ErrorKind::Width, "hidden function must take n bits");
  const std::uint64_t N = std::uint64_t{1} << n;
  if (tuples.size() != static_cast<std::size_t>(d + 2))
    throw Error(ErrorKind::Precondition, "expected tuples t_{-1} .. t_d");
  for (const auto& t : tuples)
    if (t.size() != N) throw Error(ErrorKind::Precondition, "every tuple has N entries");
  ShufflerInstance xi;
  xi.d = d;
  xi.n = n;
  xi.hidden = f;
  xi.tuples = std::move(tuples);
  for (int i = 0; i <= d; ++i) {
    FunctionTable fi(2 * n, 2 * n);
    const auto& src = xi.t(i - 1);
    const auto& dst = xi.t(i);
    for (std::uint64_t k = 0; k < N; ++k) {
      if (fi.defined(src[k])) throw Error(ErrorKind::Precondition, "tuple entries are not distinct");
      fi.set(src[k], dst[k]);
    }
    xi.funcs.push_back(std::move(fi));
  }
  return xi;
}

ShufflerInstance sample_shuffler(int d, int n, const FunctionTable& f, Rng& rng) {
  if (d < 1) throw Error(ErrorKind::Precondition, "shuffler depth must be >= 1");
  require_n(n, kMaxShufflerN, "shuffler");
  const std::uint64_t N = std::uint64_t{1} << n;
  const std::uint64_t M = std::uint64_t{1} << (2 * n);
  std::vector<std::vector<std::uint64_t>> tuples;
  std::vector<std::uint64_t> first(N);
  std::iota(first.begin(), first.end(), 0);
  tuples.push_back(std::move(first));
  for (int i = 0; i < d; ++i) tuples.push_back(distinct_draws(N, M, rng));
  std::vector<std::uint64_t> last(N);
  for (std::uint64_t k = 0; k < N; ++k) last[k] = f.at(k);
  tuples.push_back(std::move(last));
  auto xi = shuffler_from_tuples(d, n, std::move(tuples), f);
  if (!shuffler_views_agree(xi)) throw Error(ErrorKind::Precondition, "shuffler views disagree");
  return xi;
}

std::vector<FunctionTable> sample_shuffler_functions(int d, int n, const FunctionTable& f, Rng& rng) {
  if (d < 1) throw Error(ErrorKind::Precondition, "shuffler depth must be >= 1");
  require_n(n, kMaxShufflerN, "shuffler");
  const std::uint64_t N = std::uint64_t{1} << n;
  const std::uint64_t M = std::uint64_t{1} << (2 * n);
  std::vector<std::uint64_t> current(N);
  std::iota(current.begin(), current.end(), 0);
  std::vector<FunctionTable> fs;
  for (int i = 0; i < d; ++i) {
    const auto perm = shuffled_range(M, rng);
    FunctionTable fi(2 * n, 2 * n);
    for (auto& v : current) {
      fi.set(v, perm[v]);
      v = perm[v];
    }
    fs.push_back(std::move(fi));
  }
  FunctionTable fd(2 * n, 2 * n);
  for (std::uint64_t k = 0; k < N; ++k) fd.set(current[k], f.at(k));
  fs.push_back(std::move(fd));
  return fs;
}

std::vector<std::vector<std::uint64_t>> tuples_from_functions(int d, int n, const std::vector<FunctionTable>& fs) {
  const std::uint64_t N = std::uint64_t{1} << n;
  std::vector<std::vector<std::uint64_t>> tuples;
  std::vector<std::uint64_t> cur(N);
  std::iota(cur.begin(), cur.end(), 0);
  tuples.push_back(cur);
  for (int i = 0; i <= d; ++i) {
    for (auto& v : cur) v = (v == kBottom) ? kBottom : fs.at(i).at(v);
    tuples.push_back(cur);
  }
  return tuples;
}

bool shuffler_views_agree(const ShufflerInstance& xi) {
  if (tuples_from_functions(xi.d, xi.n, xi.funcs) != xi.tuples) return false;
  const auto rebuilt = shuffler_from_tuples(xi.d, xi.n, xi.tuples, xi.hidden);
  if (rebuilt.funcs != xi.funcs) return false;
  for (std::uint64_t x = 0; x < xi.N(); ++x)
    if (xi.evaluate(x) != xi.hidden.at(x)) return false;
  return true;
}

SSInstance sample_ss(int d, int n, Rng& rng, Variant variant) {
  SSInstance out;
  out.variant = variant;
  auto simon = sample_simon(n, rng);
  out.s = simon.s;
  FunctionTable f = std::move(simon.table);
  if (variant == Variant::Decision) {
    out.label = static_cast<int>(rng() & 1u);
    if (out.label == 1) {
      f = sample_one_to_one(n, rng);
      out.s = 0;
    }
  }
  out.shuffler = sample_shuffler(d, n, f, rng);
  return out;
}

// ---------------------------------------------------------------- d-SCS

StochasticOracleSpec collision_oracle(const FunctionTable& f) {
  std::vector<std::uint64_t> images;
  const auto pre = collision_pairs(f, &images);
  StochasticOracleSpec spec;
  spec.query_bits = 1;
  spec.payload_bits = f.in_bits();
  spec.y_bits = f.out_bits();
  for (std::uint64_t y : images) {
    spec.ys.push_back(y);
    spec.probs.push_back(1.0 / static_cast<double>(images.size()));
    FunctionTable g(1, f.in_bits());
    g.set(0, pre[y].first);
    g.set(1, pre[y].second);
    spec.payload.push_back(std::move(g));
  }
  spec.check();
  return spec;
}

FunctionTable cs_map(const FunctionTable& f, const FunctionTable& g) {
  if (f.in_bits() != g.in_bits()) throw Error(ErrorKind::Width, "CS map needs equal widths");
  std::vector<std::uint64_t> fi, gi;
  const auto fp = collision_pairs(f, &fi);
  const auto gp = collision_pairs(g, &gi);
  if (fi.size() != gi.size()) throw Error(ErrorKind::Precondition, "image counts differ");
  FunctionTable p(f.in_bits(), f.in_bits());
  // Both image lists are ascending, so equal ranks are equal positions.
  for (std::size_t k = 0; k < fi.size(); ++k) {
    p.set(fp[fi[k]].first, gp[gi[k]].first);
    p.set(fp[fi[k]].second, gp[gi[k]].second);
  }
  return p;
}

OracleBundle SCSInstance::bundle() const {
  OracleBundle b;
  b.label = "scs";
  b.subs = shuffler.funcs;
  b.subs.push_back(p_prime);
  b.subs.push_back(p_prime_inv);
  return b;
}

SCSInstance sample_scs(int d, int n, Rng& rng) {
  require_n(n, kMaxScsN, "scs");
  if (n < 2) throw Error(ErrorKind::Unsupported, "scs: n must be at least 2");
  SCSInstance inst;
  inst.n = n;
  inst.d = d;
  inst.f = sample_two_to_one(n, rng);
  inst.g = sample_simon(n, rng);
  inst.p = cs_map(inst.f, inst.g.table);
  inst.p_inv = FunctionTable(n, n);
  const std::uint64_t N = std::uint64_t{1} << n;
  for (std::uint64_t x = 0; x < N; ++x) inst.p_inv.set(inst.p.at(x), x);
  inst.h = sample_one_to_one(n, rng);
  inst.shuffler = sample_shuffler(d, n, inst.h, rng);
  inst.p_prime = FunctionTable(2 * n, n);
  inst.p_prime_inv = FunctionTable(2 * n, n);
  for (std::uint64_t x = 0; x < N; ++x) {
    const std::uint64_t key = inst.h.at(inst.f.at(x));
    inst.p_prime.set(pack_pair(key, x, n), inst.p.at(x));
    inst.p_prime_inv.set(pack_pair(key, inst.p.at(x), n), x);
  }
  inst.stochastic = collision_oracle(inst.f);
  return inst;
}

}  // namespace hqc
