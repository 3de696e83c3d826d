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
#include <cmath>
#include <numeric>
#include <map>
#include <unordered_set>

#include "hqc/analysis.hpp"

namespace hqc {

bool SuiteReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

int SuiteReport::failures() const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.pass; }));
}

namespace {

CheckResult make_check(std::string name, double statistic, double bound, bool pass, std::string detail = {}) {
  CheckResult c;
  c.name = std::move(name);
  c.statistic = statistic;
  c.bound = bound;
  c.lo = statistic;
  c.hi = statistic;
  c.pass = pass;
  c.detail = std::move(detail);
  return c;
}

CheckResult estimate_check(std::string name, const Estimate& e, double bound, bool pass, std::string detail = {}) {
  CheckResult c = make_check(std::move(name), e.rate, bound, pass, std::move(detail));
  c.lo = e.lo;
  c.hi = e.hi;
  return c;
}

double binomial_sigma(double p, double trials) { return std::sqrt(std::max(p * (1 - p), 0.0) / trials); }

// Random layer on `qubits`: disjoint random 2-qubit gates on shuffled pairs,
// random 1-qubit gates on the rest.
GateLayer random_layer(std::vector<int> qubits, Rng& rng, int pairs) {
  std::shuffle(qubits.begin(), qubits.end(), rng);
  GateLayer layer;
  std::size_t k = 0;
  for (int p = 0; p < pairs && k + 1 < qubits.size(); ++p, k += 2)
    layer.gates.push_back(gates::random2(qubits[k], qubits[k + 1], rng));
  for (; k < qubits.size(); ++k) layer.gates.push_back(gates::random1(qubits[k], rng));
  return layer;
}

FunctionTable random_table(int in_bits, int out_bits, Rng& rng, double bottom_rate) {
  FunctionTable t(in_bits, out_bits);
  std::bernoulli_distribution bot(bottom_rate);
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << in_bits); ++x)
    if (!bot(rng)) t.set(x, rng() & low_mask(out_bits));
  return t;
}

}  // namespace

// ---------------------------------------------------------------- Pr[find]

double find_probability(const QuantumState& rho, const GateLayer& U, const std::vector<Slot>& slots,
                        const ShadowMask& mask) {
  return find_weight(apply_layer(rho, U), slots, mask);
}

FindExperiment estimate_find(const FindConfig& cfg, int trials, Rng& rng) {
  if (trials < 1) throw Error(ErrorKind::Precondition, "trials must be >= 1");
  if (cfg.rho.layout().has("flag")) {
    const int b = cfg.rho.layout().get("flag").offset;
    if (probability_if(cfg.rho, [b](std::uint64_t i) { return (i >> b & 1u) != 0; }) > 1e-12)
      throw Error(ErrorKind::Precondition, "flag qubit must start in |0>");
  }
  check_slots(&cfg.bundle, nullptr, cfg.slots, cfg.rho.num_qubits());
  const QuantumState after = apply_layer(cfg.rho, cfg.U);
  double sum = 0, sum2 = 0;
  for (int t = 0; t < trials; ++t) {
    const double p = find_weight(after, cfg.slots, cfg.sample_mask(rng));
    sum += p;
    sum2 += p * p;
  }
  FindExperiment e;
  e.qbar = static_cast<int>(cfg.slots.size());
  e.p_hit = cfg.p_hit;
  e.trials = trials;
  e.estimate = sum / trials;
  const double var = trials > 1 ? std::max(0.0, (sum2 - trials * e.estimate * e.estimate) / (trials - 1)) : 0.0;
  e.sigma = std::sqrt(var / trials);
  e.bound = e.qbar * e.p_hit;
  e.holds = e.estimate - 3 * e.sigma <= e.bound + 1e-12;
  return e;
}

// ---------------------------------------------------------------- O2H

O2HResult check_o2h(const O2HInstance& inst) {
  if (inst.branches.empty()) throw Error(ErrorKind::Precondition, "O2H instance without branches");
  Ensemble real, shadow;
  O2HResult r;
  double diff = 0;
  for (const auto& br : inst.branches) {
    QuantumState mid = apply_layer(br.rho, inst.U);
    r.pr_find += br.prob * find_weight(mid, inst.slots, br.S);
    QuantumState a = quantum_apply(br.L, mid, inst.slots);
    QuantumState b = quantum_apply(make_shadow(br.L, br.S), std::move(mid), inst.slots);
    apply_layer_inplace(a, inst.post);
    apply_layer_inplace(b, inst.post);
    if (inst.accept) diff += br.prob * (probability_if(a, inst.accept) - probability_if(b, inst.accept));
    real.add(br.prob, std::move(a));
    shadow.add(br.prob, std::move(b));
  }
  r.lhs = std::abs(diff);
  r.bures_mid = bures(real, shadow);
  r.rhs = std::sqrt(2 * r.pr_find);
  return r;
}

O2HInstance random_o2h_instance(Rng& rng, int qubits) {
  if (qubits < 4 || qubits > kMaxDensityQubits) throw Error(ErrorKind::Range, "O2H instances use 4..10 qubits");
  const int q = (qubits - 2) / 2;
  RegisterLayout layout;
  layout.add("Q", q);
  layout.add("R", q + 1);
  layout.add("W", qubits - 2 * q - 1);
  const auto rq = layout.qubits("R");
  const int flag = rq.back();
  std::vector<int> free;
  for (int i = 0; i < qubits; ++i)
    if (i != flag) free.push_back(i);

  O2HInstance inst;
  inst.slots = {Slot{0, layout.qubits("Q"), rq, -1}};
  inst.U = random_layer(free, rng, 2);
  inst.post = random_layer(free, rng, 2);
  std::vector<char> acc(std::size_t{1} << qubits);
  for (auto& a : acc) a = static_cast<char>(rng() & 1u);
  inst.accept = [acc](std::uint64_t i) { return acc[i] != 0; };

  const int k = 1 + static_cast<int>(rng() % 3);
  double total = 0;
  for (int j = 0; j < k; ++j) {
    O2HBranch br;
    br.prob = std::uniform_real_distribution<double>(0.1, 1.0)(rng);
    total += br.prob;
    OracleBundle L;
    L.label = "o2h";
    L.subs.push_back(random_table(q, q, rng, 0.25));
    br.S = ShadowMask::none(L);
    br.S.sets[0] = DomainSet(q);
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << q); ++x)
      if (rng() & 1u) br.S.sets[0].insert(x);
    br.L = std::move(L);
    br.rho = QuantumState(layout);
    apply_layer_inplace(br.rho, random_layer(free, rng, 0));
    apply_layer_inplace(br.rho, random_layer(free, rng, 2));
    inst.branches.push_back(std::move(br));
  }
  for (auto& br : inst.branches) br.prob /= total;
  return inst;
}

// ---------------------------------------------------------------- d-Shuffler

bool ShufflerBeta::mentions(std::uint64_t x, int i) const {
  for (const auto& p : paths)
    if (i >= 0 && static_cast<std::size_t>(i) < p.size() && p[i] == x) return true;
  if (static_cast<std::size_t>(i) < required.size())
    for (auto v : required[i])
      if (v == x) return true;
  return false;
}

ShufflerInstance sample_shuffler_beta(int d, int n, const FunctionTable& f, const ShufflerBeta& beta, Rng& rng) {
  if (d < 1) throw Error(ErrorKind::Precondition, "shuffler depth must be >= 1");
  if (n < 1 || n > kMaxShufflerN) throw Error(ErrorKind::Unsupported, "shuffler n outside [1, 12]");
  const std::uint64_t N = std::uint64_t{1} << n;
  const std::uint64_t M = std::uint64_t{1} << (2 * n);
  auto at = [](const std::vector<std::vector<std::uint64_t>>& v, int i) -> const std::vector<std::uint64_t>& {
    static const std::vector<std::uint64_t> none;
    return static_cast<std::size_t>(i) < v.size() ? v[i] : none;
  };
  for (const auto& p : beta.paths)
    if (p.size() != static_cast<std::size_t>(d + 1) || p[0] >= N)
      throw Error(ErrorKind::Precondition, "beta path must be (x_{-1}, x_0, ..., x_{d-1}) with x_{-1} < N");

  std::vector<std::vector<std::uint64_t>> tuples;
  std::vector<std::uint64_t> first(N);
  std::iota(first.begin(), first.end(), 0);
  tuples.push_back(std::move(first));
  for (int j = 0; j < d; ++j) {
    const int i = j + 1;  // the tuple t_j is the domain of f_{j+1}
    std::vector<std::uint64_t> t(N, kBottom);
    std::unordered_set<std::uint64_t> used;
    auto claim = [&](std::uint64_t v) {
      if (v >= M || !used.insert(v).second) throw Error(ErrorKind::Precondition, "beta is not proper");
    };
    for (const auto& p : beta.paths) {
      if (t[p[0]] != kBottom) throw Error(ErrorKind::Precondition, "two beta paths share a start");
      t[p[0]] = p[j + 1];
      claim(p[j + 1]);
    }
    std::vector<std::uint64_t> free;
    for (std::uint64_t k = 0; k < N; ++k)
      if (t[k] == kBottom) free.push_back(k);
    const auto& req = at(beta.required, i);
    if (req.size() > free.size()) throw Error(ErrorKind::Precondition, "beta requires too many values");
    std::shuffle(free.begin(), free.end(), rng);
    std::size_t next = 0;
    for (auto v : req) {
      claim(v);
      t[free[next++]] = v;
    }
    std::unordered_set<std::uint64_t> banned(used.begin(), used.end());
    for (auto v : at(beta.excluded, i)) {
      if (used.count(v)) throw Error(ErrorKind::Precondition, "beta both requires and excludes a value");
      banned.insert(v);
    }
    if (M - banned.size() < free.size() - next) throw Error(ErrorKind::Precondition, "beta leaves too few values");
    std::uniform_int_distribution<std::uint64_t> pick(0, M - 1);
    for (; next < free.size(); ++next) {
      std::uint64_t v;
      do v = pick(rng);
      while (banned.count(v));
      banned.insert(v);
      t[free[next]] = v;
    }
    tuples.push_back(std::move(t));
  }
  std::vector<std::uint64_t> last(N);
  for (std::uint64_t k = 0; k < N; ++k) last[k] = f.at(k);
  tuples.push_back(std::move(last));
  return shuffler_from_tuples(d, n, std::move(tuples), f);
}

DomHitResult check_dom_hit(int d, int n, const ShufflerBeta& beta, std::uint64_t x, int i, int trials, Rng& rng,
                           double delta) {
  if (i < 1 || i > d) throw Error(ErrorKind::Range, "dom index outside [1, d]");
  if (trials < 1) throw Error(ErrorKind::Precondition, "trials must be >= 1");
  if (beta.mentions(x, i)) throw Error(ErrorKind::Precondition, "x is specified by beta");
  const double N = std::ldexp(1.0, n), M = std::ldexp(1.0, 2 * n);
  const double K = static_cast<double>(beta.paths.size());
  const double H = static_cast<double>(static_cast<std::size_t>(i) < beta.required.size() ? beta.required[i].size() : 0);
  double E = 0;
  bool excluded = false;
  if (static_cast<std::size_t>(i) < beta.excluded.size()) {
    E = static_cast<double>(beta.excluded[i].size());
    excluded = std::count(beta.excluded[i].begin(), beta.excluded[i].end(), x) > 0;
  }
  DomHitResult r;
  // x itself is excluded: it is not in the pool, so the pool shrinks by E - 1 others.
  r.exact = excluded ? 0.0 : (N - K - H) / (M - K - H - E);
  r.bound = std::exp2(delta) * N / (M - K - H - E);
  const FunctionTable f = FunctionTable::identity(n);
  auto run = [&](int t) {
    std::uint64_t hits = 0;
    for (int k = 0; k < t; ++k) {
      const auto xi = sample_shuffler_beta(d, n, f, beta, rng);
      const auto& tup = xi.t(i - 1);
      hits += std::find(tup.begin(), tup.end(), x) != tup.end();
    }
    return wilson(hits, static_cast<std::uint64_t>(t));
  };
  r.estimate = run(trials);
  auto ok = [&] { return r.estimate.rate - 3 * binomial_sigma(r.estimate.rate, r.estimate.trials) <= r.bound; };
  r.holds = ok();
  if (!r.holds) {
    r.rerun = true;
    r.estimate = run(trials * 10);
    r.holds = ok();
  }
  return r;
}

// ---------------------------------------------------------------- suites

namespace {

std::uint64_t perm_count(int a, int b) {  // aPb
  std::uint64_t v = 1;
  for (int k = 0; k < b; ++k) v *= static_cast<std::uint64_t>(a - k);
  return v;
}

std::uint64_t comb_count(int a, int b) {  // aCb
  std::uint64_t v = 1;
  for (int k = 1; k <= b; ++k) v = v * static_cast<std::uint64_t>(a - b + k) / static_cast<std::uint64_t>(k);
  return v;
}

}  // namespace

SuiteReport verify_combinatorics(int max_a) {
  SuiteReport rep;
  rep.suite = "combinatorics";
  int bad_p = 0, bad_c = 0, cases = 0;
  for (int a = 0; a <= max_a; ++a)
    for (int b = 0; b <= a; ++b) {
      ++cases;
      // aPb / (a+1)P(b+1) = 1 / (a+1)
      if (perm_count(a, b) * static_cast<std::uint64_t>(a + 1) != perm_count(a + 1, b + 1)) ++bad_p;
      // aCb / (a+1)C(b+1) = (b+1) / (a+1)
      if (comb_count(a, b) * static_cast<std::uint64_t>(a + 1) !=
          comb_count(a + 1, b + 1) * static_cast<std::uint64_t>(b + 1))
        ++bad_c;
    }
  rep.checks.push_back(make_check("combinatorics.permutation_ratio", bad_p, 0, bad_p == 0,
                                  std::to_string(cases) + " pairs with b <= a <= " + std::to_string(max_a)));
  rep.checks.push_back(make_check("combinatorics.combination_ratio", bad_c, 0, bad_c == 0,
                                  std::to_string(cases) + " pairs; ratio (b+1)/(a+1)"));

  // Pr[x in t] = N / M for a uniform tuple of N distinct values out of M.
  int bad_t = 0, tuples = 0;
  for (int M = 1; M <= 7; ++M)
    for (int N = 1; N <= M; ++N) {
      std::vector<int> pick(M, 0);
      std::uint64_t total = 0, with_x = 0;
      std::vector<int> cur;
      std::function<void()> rec = [&] {
        if (static_cast<int>(cur.size()) == N) {
          ++total;
          with_x += std::count(cur.begin(), cur.end(), 0) > 0;
          return;
        }
        for (int v = 0; v < M; ++v)
          if (!pick[v]) {
            pick[v] = 1;
            cur.push_back(v);
            rec();
            cur.pop_back();
            pick[v] = 0;
          }
      };
      rec();
      ++tuples;
      if (with_x * static_cast<std::uint64_t>(M) != total * static_cast<std::uint64_t>(N) ||
          total != perm_count(M, N))
        ++bad_t;
    }
  rep.checks.push_back(make_check("combinatorics.tuple_membership", bad_t, 0, bad_t == 0,
                                  std::to_string(tuples) + " (N, M) pairs with M <= 7"));

  // Pr[S subset of parts(u)] = (N - |S|)! / N! for the uniform permutation.
  int bad_u = 0, parts = 0;
  for (int N = 1; N <= kMaxExhaustiveN; ++N) {
    const auto u = PermDistribution::uniform(N);
    for (PartMask s : all_parts(N)) {
      ++parts;
      std::uint64_t count = 0;
      for (auto m : u.masks()) count += (s & ~m) == 0;
      if (count != perm_count(N - part_size(s), N - part_size(s))) ++bad_u;
    }
  }
  rep.checks.push_back(make_check("combinatorics.uniform_parts", bad_u, 0, bad_u == 0,
                                  std::to_string(parts) + " parts with N <= 5"));
  return rep;
}

SuiteReport verify_shuffler(std::uint64_t seed, int seeds, int trials) {
  SuiteReport rep;
  rep.suite = "shuffler";
  rep.seed = seed;

  // Both definitions agree pointwise.
  int agree = 0, total = 0;
  for (int s = 0; s < seeds; ++s)
    for (int d = 1; d <= 4; ++d) {
      Rng rng = split_rng(seed, static_cast<std::uint64_t>(s * 8 + d));
      const int n = 4;
      const auto f = sample_simon(n, rng).table;
      ++total;
      const auto xi = sample_shuffler(d, n, f, rng);
      const auto fs = sample_shuffler_functions(d, n, f, rng);
      const auto back = shuffler_from_tuples(d, n, tuples_from_functions(d, n, fs), f);
      if (shuffler_views_agree(xi) && back.funcs == fs && shuffler_views_agree(back)) ++agree;
    }
  rep.checks.push_back(make_check("shuffler.dual_definition", agree, total, agree == total, "n=4, d=1..4"));

  // Pr[x in dom_i] = N / M for the unconditioned shuffler.
  Rng rng = split_rng(seed, 1u << 20);
  const int n = 4, d = 2;
  const double target = std::ldexp(1.0, -n);
  for (int i = 1; i <= d; ++i) {
    const std::uint64_t x = rng() & low_mask(2 * n);
    const auto r = check_dom_hit(d, n, ShufflerBeta{}, x, i, trials, rng);
    const double sig = binomial_sigma(target, r.estimate.trials);
    rep.checks.push_back(estimate_check("shuffler.dom_hit.uniform.i" + std::to_string(i), r.estimate, target,
                                        std::abs(r.estimate.rate - target) <= 3 * sig && r.holds, "x=" + std::to_string(x)));
  }
  {
    const std::uint64_t x = 5;
    ShufflerBeta beta;
    beta.paths.push_back({3, 17, 200});
    const auto r = check_dom_hit(d, n, beta, x, 1, trials, rng);
    const double sig = binomial_sigma(r.exact, r.estimate.trials);
    rep.checks.push_back(estimate_check("shuffler.dom_hit.path_elsewhere", r.estimate, r.exact,
                                        std::abs(r.estimate.rate - r.exact) <= 3 * sig &&
                                            std::abs(r.estimate.rate - target) <= 3 * binomial_sigma(target, r.estimate.trials) + 1.0 / 256,
                                        "beta path avoids x"));
    ShufflerBeta ex;
    ex.excluded.assign(d + 1, {});
    ex.excluded[2].push_back(x);
    const auto z = check_dom_hit(d, n, ex, x, 2, trials / 10 + 1, rng);
    rep.checks.push_back(estimate_check("shuffler.dom_hit.excluded", z.estimate, 0.0, z.estimate.successes == 0,
                                        "x excluded from dom_2"));
  }

  // Exhaustive n=1, d=2: 144 tuple shufflers, each hit 4 times by the 24^2 permutation pairs.
  {
    const int N = 2, M = 4;
    std::map<std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>>, int> counts;
    std::vector<std::uint64_t> p(M), q(M);
    std::iota(p.begin(), p.end(), 0);
    do {
      std::iota(q.begin(), q.end(), 0);
      do {
        std::vector<std::uint64_t> t0{p[0], p[1]}, t1{q[t0[0]], q[t0[1]]};
        ++counts[{t0, t1}];
      } while (std::next_permutation(q.begin(), q.end()));
    } while (std::next_permutation(p.begin(), p.end()));
    bool uniform = counts.size() == 144;
    for (const auto& [k, c] : counts) uniform = uniform && c == 4;
    int dom_ok = 0;
    for (std::uint64_t x = 0; x < static_cast<std::uint64_t>(M); ++x) {
      int in0 = 0;
      for (const auto& [k, c] : counts) in0 += std::count(k.first.begin(), k.first.end(), x) > 0;
      dom_ok += in0 * M == static_cast<int>(counts.size()) * N;
    }
    rep.checks.push_back(make_check("shuffler.exhaustive.n1d2", static_cast<double>(counts.size()), 144,
                                    uniform && dom_ok == M, "function view induces the uniform tuple view"));
  }
  // Exhaustive n=2, d=1: every t_0 of 4 distinct values out of 16.
  {
    const int N = 4, M = 16;
    std::uint64_t count = 0, roundtrip = 0;
    std::vector<std::uint64_t> member(M, 0);
    const auto f = FunctionTable::identity(2);
    for (int a = 0; a < M; ++a)
      for (int b = 0; b < M; ++b)
        for (int c = 0; c < M; ++c)
          for (int e = 0; e < M; ++e) {
            if (a == b || a == c || a == e || b == c || b == e || c == e) continue;
            ++count;
            for (int v : {a, b, c, e}) ++member[v];
            std::vector<std::vector<std::uint64_t>> t{{0, 1, 2, 3},
                                                      {std::uint64_t(a), std::uint64_t(b), std::uint64_t(c), std::uint64_t(e)},
                                                      {0, 1, 2, 3}};
            const auto xi = shuffler_from_tuples(1, 2, t, f);
            roundtrip += tuples_from_functions(1, 2, xi.funcs) == xi.tuples;
          }
    bool exact = count == perm_count(M, N);
    for (auto m : member) exact = exact && m * M == count * N;
    rep.checks.push_back(make_check("shuffler.exhaustive.n2d1", static_cast<double>(roundtrip), static_cast<double>(count),
                                    exact && roundtrip == count, "Pr[x in dom_1] = N/M exactly"));
  }
  return rep;
}

SuiteReport verify_decomposition(std::uint64_t seed, int family) {
  SuiteReport rep;
  rep.suite = "decomposition";
  rep.seed = seed;
  struct Grid {
    double gamma, delta;
  };
  const Grid grid[] = {{1.0 / 8, 1.0}, {1.0 / 4, 2.0}, {1.0 / 16, 0.5}};
  double max_err = 0, max_res_excess = -1, max_size_ratio = 0, max_first_ratio = 0, max_delta_excess = -1e300;
  double c_err = 0, c_res_excess = -1, c_size_ratio = 0, c_delta_excess = -1e300;
  int runs = 0, comp_runs = 0, components = 0, precondition_ok = 0, precondition_cases = 0;
  for (int N : {3, 4}) {
    const auto u = PermDistribution::uniform(N);
    const std::size_t P = u.probs().size();
    for (int g = 0; g < family; ++g) {
      Rng rng = split_rng(seed, static_cast<std::uint64_t>(N * 1000 + g));
      std::vector<int> advice(P), advice2(P);
      for (auto& v : advice) v = static_cast<int>(rng() % 4);
      for (auto& v : advice2) v = static_cast<int>(rng() % 4);
      for (const auto& gd : grid)
        for (int r = 0; r < 4; ++r) {
          const double pr = u.prob_if([&](std::size_t i) { return advice[i] == r; });
          if (pr < gd.gamma) {
            ++precondition_cases;
            try {
              decompose_conditioned(u, advice, r, gd.gamma, gd.delta);
            } catch (const Error& e) {
              precondition_ok += e.kind() == ErrorKind::Precondition;
            }
            continue;
          }
          const auto res = decompose_conditioned(u, advice, r, gd.gamma, gd.delta);
          ++runs;
          max_err = std::max(max_err, res.reconstruction_error);
          max_res_excess = std::max(max_res_excess, res.residual - gd.gamma);
          const double m = res.m;
          for (std::size_t k = 0; k < res.components.size(); ++k) {
            const auto& c = res.components[k];
            ++components;
            const int sz = part_size(c.added);
            max_size_ratio = std::max(max_size_ratio, sz / res.size_bound);
            if (k == 0 && sz > 0) max_first_ratio = std::max(max_first_ratio, sz * gd.delta / m);
            max_delta_excess = std::max(max_delta_excess, nonuniformity_delta(c.dist, nullptr, c.fixed).delta - gd.delta);
            // Second application on the component: fresh advice, target 2 delta.
            for (int r2 = 0; r2 < 4; ++r2) {
              const double pr2 = c.dist.prob_if([&](std::size_t i) { return advice2[i] == r2; });
              if (pr2 < gd.gamma) continue;
              const auto sub = decompose_conditioned(c.dist, advice2, r2, gd.gamma, 2 * gd.delta, c.fixed, gd.delta);
              ++comp_runs;
              c_err = std::max(c_err, sub.reconstruction_error);
              c_res_excess = std::max(c_res_excess, sub.residual - gd.gamma);
              for (const auto& sc : sub.components) {
                c_size_ratio = std::max(c_size_ratio, part_size(sc.added) / sub.size_bound);
                c_delta_excess =
                    std::max(c_delta_excess, nonuniformity_delta(sc.dist, nullptr, sc.fixed).delta - 2 * gd.delta);
              }
            }
          }
        }
    }
  }
  const std::string info = std::to_string(runs) + " decompositions, " + std::to_string(components) + " components";
  rep.checks.push_back(make_check("decomposition.reconstruction", max_err, 1e-9, max_err <= 1e-9, info));
  rep.checks.push_back(make_check("decomposition.residual_le_gamma", max_res_excess, 0, max_res_excess <= 1e-12));
  rep.checks.push_back(make_check("decomposition.part_size_lt_2m_over_delta", max_size_ratio, 1, max_size_ratio < 1));
  rep.checks.push_back(make_check("decomposition.first_part_lt_m_over_delta", max_first_ratio, 1, max_first_ratio < 1));
  rep.checks.push_back(make_check("decomposition.component_delta", max_delta_excess, 1e-9, max_delta_excess <= 1e-9));
  rep.checks.push_back(make_check("decomposition.precondition", precondition_ok, precondition_cases,
                                  precondition_ok == precondition_cases, "advice values below gamma are refused"));
  const std::string cinfo = std::to_string(comp_runs) + " second-level decompositions";
  rep.checks.push_back(make_check("composition.reconstruction", c_err, 1e-9, c_err <= 1e-9, cinfo));
  rep.checks.push_back(make_check("composition.residual_le_gamma", c_res_excess, 0, c_res_excess <= 1e-12));
  rep.checks.push_back(make_check("composition.part_size_lt_2m_over_delta", c_size_ratio, 1, c_size_ratio < 1));
  rep.checks.push_back(make_check("composition.delta_le_2delta", c_delta_excess, 1e-9, c_delta_excess <= 1e-9));
  return rep;
}

SuiteReport verify_o2h(std::uint64_t seed, int instances) {
  SuiteReport rep;
  rep.suite = "o2h";
  rep.seed = seed;
  int holding = 0;
  double gap1 = -1e300, gap2 = -1e300;
  for (int k = 0; k < instances; ++k) {
    Rng rng = split_rng(seed, static_cast<std::uint64_t>(k));
    const auto r = check_o2h(random_o2h_instance(rng, 6));
    gap1 = std::max(gap1, r.lhs - r.bures_mid);
    gap2 = std::max(gap2, r.bures_mid - r.rhs);
    holding += r.holds(1e-9);
  }
  rep.checks.push_back(make_check("o2h.chain_holds", holding, instances, holding == instances,
                                  std::to_string(instances) + " random 6-qubit instances"));
  rep.checks.push_back(make_check("o2h.max_lhs_minus_bures", gap1, 1e-9, gap1 <= 1e-9));
  rep.checks.push_back(make_check("o2h.max_bures_minus_rhs", gap2, 1e-9, gap2 <= 1e-9));
  return rep;
}

SuiteReport verify_find(std::uint64_t seed, int configs, int trials) {
  SuiteReport rep;
  rep.suite = "find";
  rep.seed = seed;
  const int n = 4;
  const double ps[] = {1.0 / 16, 1.0 / 8, 1.0 / 4, 1.0 / 2};
  int holding = 0;
  double worst = -1e300;
  for (int k = 0; k < configs; ++k) {
    Rng rng = split_rng(seed, static_cast<std::uint64_t>(k));
    const int q = 1 + static_cast<int>(rng() % 2);
    RegisterLayout layout;
    for (int j = 0; j < q; ++j) {
      layout.add("Q" + std::to_string(j), n);
      layout.add("R" + std::to_string(j), n + 1);
    }
    layout.add("flag", 1);
    FindConfig cfg;
    cfg.bundle.label = "find";
    cfg.bundle.subs.push_back(random_table(n, n, rng, 0.0));
    std::vector<int> qs;
    for (int j = 0; j < q; ++j) {
      const auto qq = layout.qubits("Q" + std::to_string(j));
      qs.insert(qs.end(), qq.begin(), qq.end());
      cfg.slots.push_back(Slot{0, qq, layout.qubits("R" + std::to_string(j)), -1});
    }
    cfg.rho = QuantumState(layout);
    apply_layer_inplace(cfg.rho, random_layer(qs, rng, 0));
    cfg.U = random_layer(qs, rng, static_cast<int>(qs.size()) / 2);
    const double p = ps[rng() % 4];
    cfg.p_hit = p;
    cfg.sample_mask = [p, n](Rng& r) {
      ShadowMask m;
      m.sets.push_back(DomainSet(n));
      std::bernoulli_distribution in(p);
      for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x)
        if (in(r)) m.sets[0].insert(x);
      return m;
    };
    auto e = estimate_find(cfg, trials, rng);
    if (!e.holds) e = estimate_find(cfg, trials * 10, rng);
    holding += e.holds;
    worst = std::max(worst, e.estimate - 3 * e.sigma - e.bound);
  }
  rep.checks.push_back(make_check("find.bound_holds", holding, configs, holding == configs,
                                  std::to_string(configs) + " (U, rho, S) configurations at n=4"));
  rep.checks.push_back(make_check("find.max_estimate_minus_3sigma_minus_bound", worst, 0, worst <= 1e-12,
                                  "failing configurations rerun once at 10x trials"));
  return rep;
}

}  // namespace hqc
