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
#include <map>

#include "hqc/analysis.hpp"

namespace hqc {

// ---------------------------------------------------------------- shadow probe

HybridProgram random_serial_adversary(int c, int n, int depth, Rng& rng) {
  if (depth < 0 || depth > c) throw Error(ErrorKind::Precondition, "adversary depth outside [0, c]");
  HybridProgram p;
  p.name = "random-serial-adversary";
  p.model = Model::QNC;
  p.depth = depth;
  p.tracks = 1;
  for (const char* r : {"A", "B"}) {
    p.layout.add(std::string("Z") + r, n);
    p.layout.add(std::string("X") + r, n);
    p.layout.add(std::string("R") + r, n + 1);
  }
  auto q = [&](const std::string& name) { return p.layout.qubits(name); };
  auto pick = [&](std::vector<int> pool, int k) {
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(std::min<std::size_t>(k, pool.size()));
    return pool;
  };
  auto cat = [](std::vector<int> a, const std::vector<int>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  const auto za = q("ZA"), zb = q("ZB"), xa = q("XA"), xb = q("XB");
  std::vector<int> ra(q("RA")), rb(q("RB"));
  ra.pop_back();  // payload only; flags are never touched
  rb.pop_back();

  GateLayer first = hadamard_layer(cat(xa, xb));
  for (int t : pick(cat(za, zb), 4)) first.gates.push_back(gates::random1(t, rng));
  for (int k = 1; k <= depth; ++k) {
    if (k == 1) {
      p.stages.push_back(stage::unitary(first, "U_rand"));
    } else {
      const auto t = pick(cat(cat(za, zb), cat(ra, rb)), 3);
      GateLayer layer;
      layer.gates.push_back(gates::random2(t[0], t[1], rng));
      layer.gates.push_back(gates::random1(t[2], rng));
      p.stages.push_back(stage::unitary(layer, "U_rand"));
    }
    const int sa = static_cast<int>(rng() % static_cast<std::uint64_t>(c + 1));
    const int sb = static_cast<int>(rng() % static_cast<std::uint64_t>(c + 1));
    p.stages.push_back(stage::oracle(
        std::vector<Slot>{Slot{sa, cat(za, xa), q("RA"), -1}, Slot{sb, cat(zb, xb), q("RB"), -1}}, "O"));
  }
  p.stages.push_back(stage::unitary(hadamard_layer(xb), "U_H"));
  p.stages.push_back(stage::measure(xb, "guess"));
  return p;
}

namespace {

std::vector<std::vector<Slot>> oracle_slots(const HybridProgram& p) {
  std::vector<std::vector<Slot>> out;
  const ClassicalMemory empty;
  for (const auto& s : p.stages)
    if (s.kind == StageKind::Oracle) out.push_back(s.slots(StageInput{0, empty}));
  return out;
}

const Stage& final_measurement(const HybridProgram& p) {
  for (const auto& s : p.stages)
    if (s.kind == StageKind::Measure) return s;
  throw Error(ErrorKind::Precondition, "adversary has no measurement");
}

}  // namespace

ShadowComparison shadow_compare(const HybridProgram& adversary, const SerialInstance& inst) {
  if (adversary.model != Model::QNC || adversary.tracks != 1)
    throw Error(ErrorKind::Precondition, "shadow probe expects a single-track QNC adversary");
  const auto bundle = inst.bundle();
  const auto slots = oracle_slots(adversary);
  if (static_cast<int>(slots.size()) > inst.c) throw Error(ErrorKind::Precondition, "more oracle layers than levels");
  std::vector<ShadowMask> masks;
  std::vector<OracleBundle> shadows;
  for (std::size_t k = 1; k <= slots.size(); ++k) {
    masks.push_back(shadow_sets_serial(static_cast<int>(k), inst).to_mask(bundle));
    shadows.push_back(make_shadow(bundle, masks.back()));
  }
  const auto& meas = final_measurement(adversary);
  Rng rng(0);
  RunOptions real_opts;
  real_opts.stop_before_measurement = true;
  const auto real = run(adversary, {&bundle, nullptr}, rng, real_opts);

  ShadowComparison out;
  RunOptions sh_opts;
  sh_opts.stop_before_measurement = true;
  sh_opts.layer_bundle = [&](int k) { return &shadows.at(k - 1); };
  sh_opts.before_oracle = [&](int k, const std::vector<QuantumState>& states) {
    out.bound += std::sqrt(2 * find_weight(states.at(0), slots.at(k - 1), masks.at(k - 1)));
  };
  const auto shadow = run(adversary, {&bundle, nullptr}, rng, sh_opts);

  std::map<std::uint64_t, std::pair<double, double>> dist;
  for (const auto& [o, p] : outcome_distribution(real.states.at(0), meas.qubits)) dist[o].first += p;
  for (const auto& [o, p] : outcome_distribution(shadow.states.at(0), meas.qubits)) dist[o].second += p;
  for (const auto& [o, pq] : dist) out.tv += 0.5 * std::abs(pq.first - pq.second);
  if (auto it = dist.find(inst.answer); it != dist.end()) {
    out.real_success = it->second.first;
    out.shadow_success = it->second.second;
  }
  return out;
}

ShadowProbeResult shadow_equivalence_probe(int c, int n, int depth, int adversaries, int instances_per,
                                           std::uint64_t seed) {
  ShadowProbeResult r;
  r.guess = std::ldexp(1.0, -n);
  r.max_excess = -1e300;
  double s1 = 0, s2 = 0;
  for (int a = 0; a < adversaries; ++a) {
    Rng arng = split_rng(seed, static_cast<std::uint64_t>(a));
    const auto adv = random_serial_adversary(c, n, depth, arng);
    for (int i = 0; i < instances_per; ++i) {
      Rng irng = split_rng(seed ^ 0x9e3779b97f4a7c15ull, static_cast<std::uint64_t>(a * instances_per + i));
      const auto inst = sample_serial(c, n, irng);
      const auto cmp = shadow_compare(adv, inst);
      ++r.instances;
      r.mean_tv += cmp.tv;
      r.mean_bound += cmp.bound;
      r.max_excess = std::max(r.max_excess, cmp.tv - cmp.bound);
      r.violations += cmp.tv > cmp.bound + 1e-9;
      r.real_success += cmp.real_success;
      s1 += cmp.shadow_success;
      s2 += cmp.shadow_success * cmp.shadow_success;
    }
  }
  if (r.instances > 0) {
    const double k = r.instances;
    r.mean_tv /= k;
    r.mean_bound /= k;
    r.real_success /= k;
    r.shadow_success = s1 / k;
    const double var = r.instances > 1 ? std::max(0.0, (s2 - k * r.shadow_success * r.shadow_success) / (k - 1)) : 0.0;
    r.success_sigma = std::sqrt(var / k);
  }
  return r;
}

// ---------------------------------------------------------------- d-SCS probe

double y_distinct_probability(int n, int calls) {
  const double images = std::ldexp(1.0, n - 1);
  double p = 1;
  for (int k = 0; k < calls; ++k) p *= std::max(0.0, 1.0 - k / images);
  return p;
}

HybridProgram scs_adversary_program(int d, int n, int depth, int rounds, int classical_per_round) {
  if (depth < 1 || depth > d) throw Error(ErrorKind::Precondition, "adversary depth must lie in [1, d]");
  HybridProgram p;
  p.name = "scs-birthday-adversary";
  p.model = Model::CQ;
  p.depth = depth;
  p.rounds = rounds;
  p.tracks = 1;
  p.layout.add("B", 1);
  p.layout.add("X", n + 1);
  p.layout.add("Y", n);
  p.layout.add("YZ", n);
  p.layout.add("R1", 2 * n + 1);
  const int b = p.layout.qubit("B", 0);
  auto xq = p.layout.qubits("X");
  xq.pop_back();
  const auto yq = p.layout.qubits("Y");
  auto yy = yq;
  for (int q : p.layout.qubits("YZ")) yy.push_back(q);
  const auto layout = p.layout;

  // Records one sample (b, x_b, y); a repeated y with the other b reveals s.
  auto record = [d, n](ClassicalContext& ctx, std::uint64_t bit, std::uint64_t x, std::uint64_t y) {
    auto& mem = ctx.mem();
    auto& ys = mem.lists["ys"];
    if (std::find(ys.begin(), ys.end(), y) != ys.end()) mem.scalars["y_repeat"] = 1;
    ys.push_back(y);
    std::uint64_t v = y;
    for (int i = 0; i <= d && v != kBottom; ++i) v = ctx.query(i, v);
    const std::uint64_t px = v == kBottom ? kBottom : ctx.query(d + 1, pack_pair(v, x, n));
    auto& seen = mem.lists["seen"];  // triples (y, b, p(x))
    for (std::size_t k = 0; k + 2 < seen.size(); k += 3)
      if (seen[k] == y && seen[k + 1] != bit && px != kBottom && seen[k + 2] != kBottom) {
        mem.scalars["collision"] = 1;
        if (!mem.output) ctx.output(seen[k + 2] ^ px);
      }
    seen.insert(seen.end(), {y, bit, px});
  };
  auto consume = [layout, record](ClassicalContext& ctx) {
    auto& mem = ctx.mem();
    auto it = mem.values.find("w");
    if (it == mem.values.end()) return;
    const auto o = it->second.at(0);
    mem.values.erase(it);
    record(ctx, layout.read(o, "B"), layout.read(o, "X") & low_mask(layout.get("X").width - 1), layout.read(o, "Y"));
  };
  p.stages.push_back(stage::classical(
      [consume, record, classical_per_round](ClassicalContext& ctx) {
        consume(ctx);
        for (int j = 0; j < classical_per_round; ++j) {
          const std::uint64_t bit = ctx.rng()() & 1u;
          const auto a = ctx.stochastic(bit);
          record(ctx, bit, a.payload, a.y);
        }
      },
      "A_sample"));
  p.stages.push_back(stage::unitary(hadamard_layer({b}), "U_H"));
  std::vector<int> resp = xq;
  resp.insert(resp.end(), yq.begin(), yq.end());
  p.stages.push_back(stage::oracle(std::vector<Slot>{Slot{kStochasticSub, {b}, resp, -1}}, "O_coll"));
  if (depth >= 2) {
    p.stages.push_back(stage::unitary(GateLayer{}, "U0"));
    p.stages.push_back(stage::oracle(std::vector<Slot>{Slot{0, yy, p.layout.qubits("R1"), -1}}, "O_f0"));
  }
  p.stages.push_back(stage::unitary(GateLayer{}, "U0"));
  p.stages.push_back(stage::measure_all("w"));
  p.epilogue.push_back(stage::classical(
      [consume, n](ClassicalContext& ctx) {
        consume(ctx);
        if (!ctx.mem().output)
          ctx.output(1 + std::uniform_int_distribution<std::uint64_t>(0, low_mask(n) - 1)(ctx.rng()));
      },
      "A_guess"));
  return p;
}

ScsProbeResult scs_hardness_probe(int d, int n, int depth, int trials, std::uint64_t seed, int rounds,
                                  int classical_per_round) {
  if (depth > d) throw Error(ErrorKind::Precondition, "adversary depth must stay below the shuffler depth");
  const auto adv = scs_adversary_program(d, n, depth, rounds, classical_per_round);
  const auto v = validate(adv);
  if (!v.ok) throw Error(ErrorKind::Validation, v.kind + ": " + v.message);
  std::vector<char> win(trials), coll(trials), distinct(trials);
  parallel_trials(trials, seed, 1, [&](int t, Rng& rng) {
    const auto inst = sample_scs(d, n, rng);
    const auto bundle = inst.bundle();
    const auto res = run(adv, {&bundle, &inst.stochastic}, rng);
    win[t] = res.output == inst.s();
    coll[t] = res.memory.scalar("collision") != 0;
    distinct[t] = res.memory.scalar("y_repeat") == 0;
  });
  auto count = [](const std::vector<char>& v) {
    return static_cast<std::uint64_t>(std::count(v.begin(), v.end(), 1));
  };
  ScsProbeResult r;
  r.success = wilson(count(win), trials);
  r.collision = wilson(count(coll), trials);
  r.y_distinct = wilson(count(distinct), trials);
  r.stochastic_calls = rounds * (classical_per_round + 1);
  r.guess = 1.0 / (std::ldexp(1.0, n) - 1);
  r.p_distinct = y_distinct_probability(n, r.stochastic_calls);
  r.collision_bound = 1 - r.p_distinct;
  r.success_bound = r.guess + r.collision_bound;
  return r;
}

namespace {

CheckResult probe_check(std::string name, double statistic, double bound, bool pass, std::string detail,
                        double lo, double hi) {
  CheckResult c;
  c.name = std::move(name);
  c.statistic = statistic;
  c.bound = bound;
  c.lo = lo;
  c.hi = hi;
  c.pass = pass;
  c.detail = std::move(detail);
  return c;
}

double sigma_at(double p, double trials) { return std::sqrt(std::max(p * (1 - p), 0.0) / trials); }

}  // namespace

SuiteReport verify_hardness_probe(std::uint64_t seed, int adversaries, int instances_per, int trials) {
  SuiteReport rep;
  rep.suite = "hardness-probe";
  rep.seed = seed;

  const auto sh = shadow_equivalence_probe(2, 4, 2, adversaries, instances_per, seed);
  rep.checks.push_back(probe_check("shadow.tv_le_hybrid_bound", sh.max_excess, 1e-9, sh.violations == 0,
                                   std::to_string(sh.instances) + " exact comparisons, mean TV " +
                                       std::to_string(sh.mean_tv) + ", mean bound " + std::to_string(sh.mean_bound),
                                   sh.max_excess, sh.max_excess));
  const double sh_cap = sh.guess + 3 * sh.success_sigma;
  rep.checks.push_back(probe_check("shadow.success_le_guess", sh.shadow_success, sh.guess,
                                   sh.shadow_success <= sh_cap, "guess 1/2^4 plus 3 sigma",
                                   sh.shadow_success - 3 * sh.success_sigma, sh.shadow_success + 3 * sh.success_sigma));

  auto scs_checks = [&](int t, std::uint64_t s) {
    const auto r = scs_hardness_probe(3, 4, 2, t, s);
    std::vector<CheckResult> out;
    const std::string calls = std::to_string(r.stochastic_calls) + " stochastic calls, " + std::to_string(t) + " trials";
    out.push_back(probe_check("scs.success_le_baseline", r.success.rate, r.success_bound,
                              r.success.rate <= r.success_bound + 3 * sigma_at(r.success_bound, t),
                              "guess 1/(2^n-1) plus birthday; " + calls, r.success.lo, r.success.hi));
    out.push_back(probe_check("scs.collision_le_birthday", r.collision.rate, r.collision_bound,
                              r.collision.rate <= r.collision_bound + 3 * sigma_at(r.collision_bound, t), calls,
                              r.collision.lo, r.collision.hi));
    out.push_back(probe_check("scs.y_distinct_matches_product", r.y_distinct.rate, r.p_distinct,
                              std::abs(r.y_distinct.rate - r.p_distinct) <= 3 * sigma_at(r.p_distinct, t), calls,
                              r.y_distinct.lo, r.y_distinct.hi));
    return out;
  };
  auto scs = scs_checks(trials, seed);
  for (std::size_t k = 0; k < scs.size(); ++k) {
    if (!scs[k].pass) {
      auto again = scs_checks(10 * trials, seed + 1).at(k);
      again.detail += " (rerun)";
      scs[k] = again;
    }
    rep.checks.push_back(scs[k]);
  }
  return rep;
}

}  // namespace hqc
