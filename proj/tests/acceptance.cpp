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

// Acceptance runner: one PASS/FAIL line per criterion, indented lines per
// sub-check. Exits nonzero if any criterion fails. The optional argument is
// the path of the hqc binary, used for the end-to-end determinism check.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "hqc/harness.hpp"

namespace {

using namespace hqc;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Sub {
  std::string name;
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

bool report(int id, const std::string& title, const std::vector<Sub>& subs) {
  bool all = true;
  for (const auto& s : subs) all = all && s.pass;
  std::printf("%s criterion %d: %s\n", all ? "PASS" : "FAIL", id, title.c_str());
  for (const auto& s : subs)
    std::printf("    %s %s  %s\n", s.pass ? "pass" : "FAIL", s.name.c_str(), s.detail.c_str());
  std::fflush(stdout);
  return all;
}

void add_suite(std::vector<Sub>& out, const SuiteReport& rep, double elapsed, double limit = -1) {
  for (const auto& c : rep.checks)
    out.push_back({c.name, c.pass, "stat " + fmt(c.statistic) + " bound " + fmt(c.bound) + "  " + c.detail});
  if (limit > 0)
    out.push_back({rep.suite + ".runtime", elapsed <= limit, fmt(elapsed) + " s, limit " + fmt(limit) + " s"});
}

// ---------------------------------------------------------------- 1

Sub solve_row(const std::string& name, ExperimentConfig c, int want_depth, double time_limit = -1) {
  c.trials = 100;
  c.threshold = 0.9;
  const auto t0 = Clock::now();
  const auto rep = run_experiment(c);
  const double secs = seconds_since(t0);
  bool depth_ok = true;
  int depth_seen = 0;
  for (const auto& r : rep.rows) {
    depth_seen = std::max(depth_seen, r.depth_used);
    if (want_depth >= 0 && r.depth_used != want_depth) depth_ok = false;
  }
  const bool time_ok = time_limit < 0 || secs <= time_limit;
  Sub s{name, rep.validated && rep.meets_threshold() && depth_ok && time_ok, ""};
  s.detail = "success " + std::to_string(rep.aggregate.successes) + "/" + std::to_string(rep.aggregate.trials) +
             " [" + fmt(rep.aggregate.lo) + ", " + fmt(rep.aggregate.hi) + "], depth " + std::to_string(depth_seen) +
             (want_depth >= 0 ? " (want " + std::to_string(want_depth) + ")" : "") + ", " + fmt(secs) + " s";
  if (!rep.validated) s.detail += ", violation " + rep.violation;
  return s;
}

ExperimentConfig cfg(const std::string& problem, const std::string& model, int depth, int n, int d) {
  ExperimentConfig c;
  c.problem = problem;
  c.model = model;
  c.depth = depth;
  c.n = n;
  c.d = d;
  c.seed = 3;
  return c;
}

bool criterion1() {
  std::vector<Sub> subs;
  subs.push_back(solve_row("serial.cq1 n6 d3", cfg("serial", "cq", 1, 6, 3), -1, 120));
  if (subs.back().pass) {
    // depth used per round never exceeds 1
    const auto rep = run_experiment([] {
      auto c = cfg("serial", "cq", 1, 6, 3);
      c.trials = 10;
      return c;
    }());
    bool ok = true;
    for (const auto& r : rep.rows) ok = ok && r.depth_used <= 1;
    subs.push_back({"serial.cq1 depth <= 1", ok, ""});
  }
  subs.push_back(solve_row("serial.qc n5 d2", cfg("serial", "qc", -1, 5, 2), 2 * 2 + 2));
  subs.push_back(solve_row("ss.cq n4 d2 budget 2d+1", cfg("ss", "cq", 2 * 2 + 1, 4, 2), -1));
  subs.push_back(solve_row("scs.qc4 n6 d3", cfg("scs", "qc", 4, 6, 3), 4));
  for (int d : {1, 6}) {
    auto c = cfg("scs", "qc", 4, 6, d);
    subs.push_back(solve_row("scs.qc4 n6 d" + std::to_string(d) + " (depth independent of d)", c, 4));
  }
  subs.push_back(solve_row("scs.cq n4 d2 budget d+6", cfg("scs", "cq", 2 + 6, 4, 2), -1));
  return report(1, "upper-bound solvers at desk scale", subs);
}

// ---------------------------------------------------------------- 2-4

bool suite_criterion(int id, const std::string& title,
                     const std::vector<std::pair<std::function<SuiteReport()>, double>>& suites) {
  std::vector<Sub> subs;
  for (const auto& [fn, limit] : suites) {
    const auto t0 = Clock::now();
    const auto rep = fn();
    add_suite(subs, rep, seconds_since(t0), limit);
  }
  return report(id, title, subs);
}

// ---------------------------------------------------------------- 5

HybridProgram skeleton(Model m, int depth) {
  HybridProgram p;
  p.name = "fixture";
  p.model = m;
  p.depth = depth;
  p.layout.add("Q", 2);
  p.layout.add("R", 3);
  return p;
}

bool criterion5() {
  const auto H = [] { return stage::unitary(hadamard_layer({0, 1}), "U_H"); };
  const auto O = [] { return stage::oracle(std::vector<Slot>{Slot{0, {0, 1}, {2, 3, 4}, -1}}, "O"); };
  const auto C = [] { return stage::classical([](ClassicalContext&) {}, "A"); };
  std::vector<std::pair<std::string, HybridProgram>> fixtures;

  auto p = skeleton(Model::QC, 1);
  p.stages = {H(), C(), O(), stage::measure({0, 1}, "w")};
  fixtures.emplace_back("coherent-classical-call", p);

  p = skeleton(Model::QC, 1);
  p.stages = {H(), O(), H(), stage::measure({0, 1}, "w")};
  fixtures.emplace_back("trailing-unitary", p);

  p = skeleton(Model::CQ, 1);
  p.stages = {C(), H(), O(), H(), stage::measure({0, 1}, "w")};
  fixtures.emplace_back("cq-partial-measurement", p);

  p = skeleton(Model::QNC, 1);
  p.stages = {H(), O(), H(), O(), H(), stage::measure_all("w")};
  fixtures.emplace_back("depth-exceeded", p);

  p = skeleton(Model::QNC, 1);
  p.stages = {H(), stage::oracle(std::vector<Slot>{Slot{0, {0, 1}, {1, 2, 3}, -1}}), stage::measure_all("w")};
  fixtures.emplace_back("register-overlap", p);

  p = skeleton(Model::QNC, 1);
  const OracleBundle b{"id", {FunctionTable::identity(2)}};
  p.stages = {H(), stage::flagged_oracle({Slot{0, {0, 1}, {2, 3, 4}, -1}}, ShadowMask::none(b)),
              stage::measure_all("w")};
  fixtures.emplace_back("missing-flag", p);

  p = skeleton(Model::QNC, 2);
  p.stages = {H(), O(), stage::measure({0}, "a"), H(), O(), stage::measure_all("w")};
  fixtures.emplace_back("mid-circuit-measurement", p);

  std::vector<Sub> subs;
  for (const auto& [want, prog] : fixtures) {
    const auto v = validate(prog);
    subs.push_back({want, !v.ok && v.kind == want, "got " + (v.ok ? std::string("ok") : v.kind)});
  }
  subs.push_back({"fixture count >= 6", fixtures.size() >= 6, std::to_string(fixtures.size()) + " fixtures"});
  return report(5, "model-grammar enforcement", subs);
}

// ---------------------------------------------------------------- 6

std::string slurp_dir(const fs::path& dir, const std::string& skip_suffix) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file()) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::string all;
  for (const auto& f : files) {
    const auto name = f.filename().string();
    if (name.size() >= skip_suffix.size() && name.compare(name.size() - skip_suffix.size(), skip_suffix.size(), skip_suffix) == 0)
      continue;
    all += "== " + name + "\n" + read_file(f.string());
  }
  return all;
}

bool criterion6(const std::string& cli) {
  std::vector<Sub> subs;
  for (const auto& c : {cfg("serial", "qc", -1, 4, 2), cfg("scs", "cq", -1, 4, 2), cfg("ss", "cq", -1, 3, 1)}) {
    auto k = c;
    k.trials = 20;
    auto k3 = k;
    k3.threads = 3;
    const auto a = report_json(run_experiment(k));
    const bool same = a == report_json(run_experiment(k)) && a == report_json(run_experiment(k3));
    subs.push_back({"library solve " + report_stem(k), same, "1 and 3 threads"});
  }
  for (const std::string s : {"combinatorics", "decomposition", "shuffler"}) {
    const bool same = to_json(run_suite(s, 11)) == to_json(run_suite(s, 11));
    subs.push_back({"library verify " + s, same, "seed 11"});
  }
  if (!cli.empty()) {
    const auto root = fs::temp_directory_path() / "hqc_acceptance";
    fs::remove_all(root);
    bool ok = true;
    std::string detail;
    for (const char* run : {"a", "b"}) {
      const auto dir = root / run;
      fs::create_directories(dir);
      const std::string q = "\"" + cli + "\"";
      const std::string out = " --out-dir \"" + dir.string() + "\" > /dev/null 2>&1";
      const int r1 = std::system((q + " solve --problem serial --model cq --depth 1 --n 5 --d 2 --trials 20 --seed 9" + out).c_str());
      const int r2 = std::system((q + " verify --suite decomposition --seed 11" + out).c_str());
      const int r3 = std::system((q + " gen --problem scs --n 4 --d 2 --seed 7 --out \"" + (dir / "scs.json").string() +
                                  "\" > /dev/null 2>&1").c_str());
      if (r1 != 0 || r2 != 0 || r3 != 0) {
        ok = false;
        detail = "cli exit codes " + std::to_string(r1) + "/" + std::to_string(r2) + "/" + std::to_string(r3);
      }
    }
    const auto a = slurp_dir(root / "a", ".timing.json");
    const auto b = slurp_dir(root / "b", ".timing.json");
    ok = ok && !a.empty() && a == b;
    if (detail.empty()) detail = std::to_string(a.size()) + " bytes compared, timing files excluded";
    subs.push_back({"cli solve/verify/gen byte-identical", ok, detail});
    fs::remove_all(root);
  }
  return report(6, "determinism", subs);
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const auto t0 = Clock::now();
  bool ok = true;
  try {
    ok &= criterion1();
    ok &= suite_criterion(2, "lower-bound property probes",
                          {{[] { return verify_o2h(5, 1000); }, -1},
                           {[] { return verify_find(5, 100, 10000); }, -1},
                           {[] { return verify_hardness_probe(5, 20, 10, 10000); }, -1}});
    ok &= suite_criterion(3, "sampling-argument decomposition", {{[] { return verify_decomposition(11, 20); }, 60}});
    ok &= suite_criterion(4, "d-Shuffler structure",
                          {{[] { return verify_shuffler(5, 100, 10000); }, -1}, {[] { return verify_combinatorics(12); }, -1}});
    ok &= criterion5();
    ok &= criterion6(cli);
  } catch (const std::exception& e) {
    std::printf("FAIL acceptance aborted: %s\n", e.what());
    return 1;
  }
  std::printf("%s all criteria (%s s)\n", ok ? "PASS" : "FAIL", fmt(seconds_since(t0)).c_str());
  return ok ? 0 : 1;
}
