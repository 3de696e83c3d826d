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
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "hqc/analysis.hpp"

namespace hqc {

namespace {

struct PermTable {
  std::vector<Permutation> perms;
  std::vector<std::uint32_t> masks;
};

const PermTable& table(int N) {
  if (N < 1 || N > kMaxExhaustiveN) throw Error(ErrorKind::Unsupported, "exhaustive mode needs 1 <= N <= 5");
  static const std::array<PermTable, kMaxExhaustiveN + 1> tables = [] {
    std::array<PermTable, kMaxExhaustiveN + 1> t;
    for (int n = 1; n <= kMaxExhaustiveN; ++n) {
      Permutation p(n);
      std::iota(p.begin(), p.end(), 0);
      do {
        t[n].perms.push_back(p);
        t[n].masks.push_back(perm_mask(p));
      } while (std::next_permutation(p.begin(), p.end()));
    }
    return t;
  }();
  return tables[N];
}


}  // namespace

std::uint32_t perm_mask(const Permutation& perm) {
  const int N = static_cast<int>(perm.size());
  std::uint32_t m = 0;
  for (int x = 0; x < N; ++x) m |= std::uint32_t{1} << (x * N + perm[x]);
  return m;
}

int part_size(PartMask part) { return std::popcount(part); }

bool is_part(PartMask part, int N) {
  if (N < 1 || N > kMaxExhaustiveN) return false;
  if (N * N < 32 && (part >> (N * N)) != 0) return false;
  std::uint32_t rows = 0, cols = 0;
  for (int c = 0; c < N * N; ++c) {
    if (!(part >> c & 1u)) continue;
    const std::uint32_t r = 1u << (c / N), k = 1u << (c % N);
    if ((rows & r) || (cols & k)) return false;
    rows |= r;
    cols |= k;
  }
  return true;
}

std::vector<std::pair<int, int>> part_paths(PartMask part, int N) {
  std::vector<std::pair<int, int>> out;
  for (int c = 0; c < N * N; ++c)
    if (part >> c & 1u) out.emplace_back(c / N, c % N);
  return out;
}

std::vector<PartMask> all_parts(int N) {
  if (N < 1 || N > kMaxExhaustiveN) throw Error(ErrorKind::Unsupported, "exhaustive mode needs 1 <= N <= 5");
  std::vector<PartMask> out;
  // Extend row by row: each row either has no path or one to an unused column.
  std::function<void(int, std::uint32_t, PartMask)> rec = [&](int x, std::uint32_t cols, PartMask part) {
    if (x == N) {
      out.push_back(part);
      return;
    }
    rec(x + 1, cols, part);
    for (int y = 0; y < N; ++y)
      if (!(cols >> y & 1u)) rec(x + 1, cols | (1u << y), part | (1u << (x * N + y)));
  };
  rec(0, 0, 0);
  std::sort(out.begin(), out.end(), [](PartMask a, PartMask b) {
    const int sa = part_size(a), sb = part_size(b);
    return sa != sb ? sa < sb : a < b;
  });
  return out;
}

// ---------------------------------------------------------------- distribution

PermDistribution PermDistribution::uniform(int N) {
  const auto& t = table(N);
  PermDistribution d;
  d.N_ = N;
  d.probs_.assign(t.perms.size(), 1.0 / static_cast<double>(t.perms.size()));
  return d;
}

PermDistribution PermDistribution::point(const Permutation& perm) {
  PermDistribution d;
  d.N_ = static_cast<int>(perm.size());
  d.probs_.assign(table(d.N_).perms.size(), 0.0);
  d.probs_[d.index_of(perm)] = 1.0;
  return d;
}

PermDistribution PermDistribution::from_weights(int N, std::vector<double> weights) {
  if (weights.size() != table(N).perms.size()) throw Error(ErrorKind::DimensionMismatch, "one weight per permutation");
  double total = 0;
  for (double w : weights) {
    if (w < 0 || !std::isfinite(w)) throw Error(ErrorKind::Precondition, "weights must be finite and non-negative");
    total += w;
  }
  if (total <= 0) throw Error(ErrorKind::Precondition, "weights sum to zero");
  PermDistribution d;
  d.N_ = N;
  for (double& w : weights) w /= total;
  d.probs_ = std::move(weights);
  return d;
}

const std::vector<Permutation>& PermDistribution::perms() const { return table(N_).perms; }
const std::vector<std::uint32_t>& PermDistribution::masks() const { return table(N_).masks; }

std::size_t PermDistribution::index_of(const Permutation& perm) const {
  const auto& ps = perms();
  const auto it = std::lower_bound(ps.begin(), ps.end(), perm);
  if (it == ps.end() || *it != perm) throw Error(ErrorKind::Precondition, "not a permutation of the right size");
  return static_cast<std::size_t>(it - ps.begin());
}

double PermDistribution::prob_contains(PartMask part) const {
  const auto& ms = masks();
  double p = 0;
  for (std::size_t i = 0; i < ms.size(); ++i)
    if ((part & ~ms[i]) == 0) p += probs_[i];
  return p;
}

double PermDistribution::prob_if(const std::function<bool(std::size_t)>& pred) const {
  double p = 0;
  for (std::size_t i = 0; i < probs_.size(); ++i)
    if (pred(i)) p += probs_[i];
  return p;
}

PermDistribution PermDistribution::conditioned(const std::function<bool(std::size_t)>& pred) const {
  std::vector<double> w(probs_.size(), 0.0);
  for (std::size_t i = 0; i < probs_.size(); ++i)
    if (pred(i)) w[i] = probs_[i];
  return from_weights(N_, std::move(w));
}

PermDistribution PermDistribution::conditioned_on_part(PartMask part) const {
  const auto& ms = masks();
  return conditioned([&](std::size_t i) { return (part & ~ms[i]) == 0; });
}

double PermDistribution::distance_l1(const PermDistribution& other) const {
  if (other.N_ != N_) throw Error(ErrorKind::DimensionMismatch, "distributions over different N");
  double s = 0;
  for (std::size_t i = 0; i < probs_.size(); ++i) s += std::abs(probs_[i] - other.probs_[i]);
  return s;
}

void PermDistribution::check() const {
  double total = 0;
  for (double p : probs_) {
    if (p < 0) throw Error(ErrorKind::Precondition, "negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw Error(ErrorKind::Precondition, "probabilities do not sum to 1");
}

// ---------------------------------------------------------------- delta

DeltaResult nonuniformity_delta(const PermDistribution& dist, const PermDistribution* baseline, PartMask fixed) {
  const int N = dist.N();
  std::optional<PermDistribution> own;
  if (!baseline) {
    own = PermDistribution::uniform(N).conditioned_on_part(fixed);
    baseline = &*own;
  }
  if (baseline->N() != N) throw Error(ErrorKind::DimensionMismatch, "baseline over a different N");
  DeltaResult best;
  best.delta = 0;
  std::vector<PartMask> dead;  // parts with Pr_t = 0; supersets are skipped
  bool first = true;
  for (PartMask s : all_parts(N)) {
    if (s == 0 || (s & fixed)) continue;
    if (std::any_of(dead.begin(), dead.end(), [s](PartMask z) { return (z & ~s) == 0; })) continue;
    const double pt = dist.prob_contains(s);
    if (pt <= 0) {
      dead.push_back(s);
      continue;
    }
    const double pb = baseline->prob_contains(s);
    const double v =
        pb <= 0 ? std::numeric_limits<double>::infinity() : std::log2(pt / pb) / static_cast<double>(part_size(s));
    if (first || v > best.delta + 1e-12) {
      best.delta = v;
      best.witness = s;
      first = false;
    }
  }
  if (first) best.delta = 0;
  return best;
}

// ---------------------------------------------------------------- decomposition

DecompositionResult decompose(const PermDistribution& target, const DecompositionOptions& opts) {
  if (!(opts.gamma > 0 && opts.gamma < 1)) throw Error(ErrorKind::Precondition, "gamma must lie in (0, 1)");
  if (!(opts.delta_target > opts.delta_source)) throw Error(ErrorKind::Precondition, "delta_target must exceed delta_source");
  target.check();
  const int N = target.N();
  const auto& ms = target.masks();
  const auto baseline = PermDistribution::uniform(N).conditioned_on_part(opts.base_fixed);
  const auto parts = all_parts(N);

  DecompositionResult out;
  out.target = target;
  out.m = std::log2(1.0 / opts.gamma);
  out.size_bound = 2.0 * out.m / (opts.delta_target - opts.delta_source);

  std::vector<double> rem = target.probs();
  double W = 1.0;
  while (W > opts.gamma + 1e-15) {
    // Largest violating part, then largest excess ratio, then smallest mask.
    PartMask pick = 0;
    int pick_size = -1;
    double pick_ratio = 0;
    for (PartMask s : parts) {
      if (s == 0 || (s & opts.base_fixed)) continue;
      double pr = 0;
      for (std::size_t i = 0; i < ms.size(); ++i)
        if ((s & ~ms[i]) == 0) pr += rem[i];
      pr /= W;
      if (pr <= 0) continue;
      const double pb = baseline.prob_contains(s);
      const double cap = std::exp2(opts.delta_target * part_size(s)) * pb;
      if (pr <= cap * (1 + 1e-12)) continue;
      const double ratio = pb > 0 ? pr / cap : std::numeric_limits<double>::infinity();
      const int sz = part_size(s);
      if (sz > pick_size || (sz == pick_size && ratio > pick_ratio * (1 + 1e-12))) {
        pick = s;
        pick_size = sz;
        pick_ratio = ratio;
      }
    }
    if (pick_size < 0) {
      DecompositionComponent c;
      c.weight = W;
      c.fixed = opts.base_fixed;
      c.dist = PermDistribution::from_weights(N, rem);
      out.components.push_back(std::move(c));
      W = 0;
      break;
    }
    std::vector<double> taken(rem.size(), 0.0);
    double mass = 0;
    for (std::size_t i = 0; i < ms.size(); ++i)
      if ((pick & ~ms[i]) == 0) {
        taken[i] = rem[i];
        mass += rem[i];
        rem[i] = 0;
      }
    DecompositionComponent c;
    c.weight = mass;
    c.fixed = opts.base_fixed | pick;
    c.added = pick;
    c.dist = PermDistribution::from_weights(N, std::move(taken));
    out.components.push_back(std::move(c));
    W -= mass;
    if (W < 1e-15) W = 0;
  }
  if (W > 0) {
    out.residual = W;
    out.residual_dist = PermDistribution::from_weights(N, rem);
  }
  std::vector<double> rebuilt(ms.size(), 0.0);
  for (const auto& c : out.components)
    for (std::size_t i = 0; i < ms.size(); ++i) rebuilt[i] += c.weight * c.dist.probs()[i];
  if (out.residual_dist)
    for (std::size_t i = 0; i < ms.size(); ++i) rebuilt[i] += out.residual * out.residual_dist->probs()[i];
  for (std::size_t i = 0; i < ms.size(); ++i)
    out.reconstruction_error = std::max(out.reconstruction_error, std::abs(rebuilt[i] - target.probs()[i]));
  return out;
}

DecompositionResult decompose_conditioned(const PermDistribution& dist, const std::vector<int>& advice, int r,
                                          double gamma, double delta, PartMask base_fixed, double delta_source) {
  if (advice.size() != dist.probs().size()) throw Error(ErrorKind::DimensionMismatch, "one advice value per permutation");
  const double pr = dist.prob_if([&](std::size_t i) { return advice[i] == r; });
  if (pr < gamma) throw Error(ErrorKind::Precondition, "advice value has probability below gamma");
  DecompositionOptions opts;
  opts.gamma = gamma;
  opts.delta_target = delta;
  opts.delta_source = delta_source;
  opts.base_fixed = base_fixed;
  return decompose(dist.conditioned([&](std::size_t i) { return advice[i] == r; }), opts);
}

}  // namespace hqc
