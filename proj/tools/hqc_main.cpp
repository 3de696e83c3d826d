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

// hqc: generate instances, run solvers and verification suites, and
// summarize solve reports.
//
// Exit codes: 0 success, 1 threshold miss or failed check, 2 usage error,
// 3 validation violation.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hqc/harness.hpp"

namespace {

std::string join(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

int fail(const hqc::Error& e) {
  std::cerr << "hqc: " << hqc::to_string(e.kind()) << ": " << e.what() << "\n";
  return e.kind() == hqc::ErrorKind::Validation ? hqc::kExitValidation : hqc::kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hybrid quantum-classical depth experiments"};
  app.require_subcommand(1);

  const std::vector<std::string> problems{"simon", "serial", "ss", "scs"};
  const std::vector<std::string> models{"qnc", "qc", "cq"};
  const std::vector<std::string> variants{"search", "decision"};

  // gen
  std::string g_problem = "serial", g_variant = "search", g_out;
  int g_n = 4, g_d = 2;
  std::uint64_t g_seed = 0;
  bool g_stdout = false;
  auto* gen = app.add_subcommand("gen", "sample an instance and write it as JSON");
  gen->add_option("--problem", g_problem)->check(CLI::IsMember(problems))->required();
  gen->add_option("--n", g_n, "bit width")->required();
  gen->add_option("--d", g_d, "levels (serial) or shuffler depth (ss, scs)");
  gen->add_option("--seed", g_seed);
  gen->add_option("--variant", g_variant)->check(CLI::IsMember(variants));
  gen->add_option("--out", g_out, "output file (default $HQC_OUT_DIR/<name>.instance.json)");
  gen->add_flag("--stdout", g_stdout, "print instead of writing a file");

  // solve
  hqc::ExperimentConfig cfg;
  std::string s_dir;
  auto* solve = app.add_subcommand("solve", "run a solver over seeded trials");
  solve->add_option("--problem", cfg.problem)->check(CLI::IsMember(problems));
  solve->add_option("--model", cfg.model)->check(CLI::IsMember(models))->required();
  solve->add_option("--depth", cfg.depth, "depth budget (default: the solver's own)");
  solve->add_option("--n", cfg.n);
  solve->add_option("--d", cfg.d);
  solve->add_option("--trials", cfg.trials)->check(CLI::PositiveNumber);
  solve->add_option("--seed", cfg.seed);
  solve->add_option("--threshold", cfg.threshold)->check(CLI::Range(0.0, 1.0));
  solve->add_option("--variant", cfg.variant)->check(CLI::IsMember(variants));
  solve->add_option("--instance", cfg.instance, "solve this instance file in every trial")->check(CLI::ExistingFile);
  solve->add_option("--threads", cfg.threads)->check(CLI::PositiveNumber);
  solve->add_option("--out-dir", s_dir, "report directory (default $HQC_OUT_DIR or .)");

  // verify
  std::string v_suite, v_dir;
  std::uint64_t v_seed = 0;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", v_suite)->check(CLI::IsMember(hqc::suite_names()))->required();
  verify->add_option("--seed", v_seed);
  verify->add_option("--out-dir", v_dir);

  // report
  std::string r_dir, r_csv;
  auto* report = app.add_subcommand("report", "tabulate solve reports by problem, model and depth");
  report->add_option("--dir", r_dir, "directory holding solve reports (default $HQC_OUT_DIR or .)");
  report->add_option("--csv", r_csv, "table CSV path (default <dir>/table.csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? hqc::kExitOk : hqc::kExitUsage;
  }

  try {
    if (*gen) {
      const auto rec = hqc::generate_instance(hqc::parse_problem(g_problem), g_n, g_d, g_seed,
                                              hqc::parse_variant(g_variant));
      const auto text = hqc::to_json(rec);
      if (g_stdout) {
        std::cout << text;
        return hqc::kExitOk;
      }
      if (g_out.empty())
        g_out = join(hqc::default_out_dir(), g_problem + "_n" + std::to_string(g_n) + "_k" + std::to_string(g_d) +
                                                 "_s" + std::to_string(g_seed) + ".instance.json");
      hqc::write_file(g_out, text);
      std::cout << g_out << "\n";
      return hqc::kExitOk;
    }

    if (*solve) {
      if (cfg.instance.empty() && solve->count("--problem") == 0) throw CLI::RequiredError("--problem");
      const auto rep = hqc::run_experiment(cfg);
      const std::string dir = s_dir.empty() ? hqc::default_out_dir() : s_dir;
      const std::string stem = join(dir, hqc::report_stem(rep.config));
      hqc::write_file(stem + ".json", hqc::report_json(rep));
      hqc::write_file(stem + ".csv", hqc::report_csv(rep));
      hqc::write_file(stem + ".timing.json", hqc::timing_json(rep));
      if (!rep.validated) {
        std::cerr << "hqc: validation: " << rep.violation << " (" << rep.solver << ")\n";
        return hqc::kExitValidation;
      }
      std::printf("%s %s: %llu/%llu success %.3f [%.3f, %.3f], threshold %.3f -> %s\n", rep.solver.c_str(),
                  stem.c_str(), static_cast<unsigned long long>(rep.aggregate.successes),
                  static_cast<unsigned long long>(rep.aggregate.trials), rep.aggregate.rate, rep.aggregate.lo,
                  rep.aggregate.hi, rep.config.threshold, rep.meets_threshold() ? "pass" : "miss");
      return rep.exit_code();
    }

    if (*verify) {
      const auto rep = hqc::run_suite(v_suite, v_seed);
      const std::string dir = v_dir.empty() ? hqc::default_out_dir() : v_dir;
      const std::string path = join(dir, "suite_" + v_suite + "_s" + std::to_string(v_seed) + ".json");
      hqc::write_file(path, hqc::to_json(rep));
      for (const auto& c : rep.checks)
        std::printf("%s %-44s stat=%-12.6g bound=%-12.6g %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.statistic,
                    c.bound, c.detail.c_str());
      std::printf("%s: %zu checks, %d failed\n", v_suite.c_str(), rep.checks.size(), rep.failures());
      return rep.all_pass() ? hqc::kExitOk : hqc::kExitThreshold;
    }

    if (*report) {
      const std::string dir = r_dir.empty() ? hqc::default_out_dir() : r_dir;
      std::vector<hqc::ExperimentReport> reports;
      try {
        reports = hqc::load_reports(dir);
      } catch (const hqc::Error& e) {
        std::cout << "no reports found in " << dir << "\n";
        return hqc::kExitUsage;
      }
      const auto cells = hqc::table_from_reports(reports);
      std::cout << hqc::render_table(cells);
      const std::string csv = r_csv.empty() ? join(dir, "table.csv") : r_csv;
      hqc::write_file(csv, hqc::table_csv(cells));
      return hqc::kExitOk;
    }
  } catch (const CLI::ParseError& e) {
    std::cerr << "hqc: " << e.what() << "\n";
    return hqc::kExitUsage;
  } catch (const hqc::Error& e) {
    return fail(e);
  } catch (const std::exception& e) {
    std::cerr << "hqc: " << e.what() << "\n";
    return hqc::kExitUsage;
  }
  return hqc::kExitUsage;
}
