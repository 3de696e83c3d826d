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

#include <filesystem>

#include <gtest/gtest.h>

#include "hqc/harness.hpp"
#include "json.hpp"

namespace hqc {
namespace {

namespace fs = std::filesystem;

fs::path scratch_dir(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("hqc_harness_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::Precondition;
}

// ---------------------------------------------------------------- instances

TEST(Instance, RoundTripIsByteIdentical) {
  const std::vector<std::tuple<ProblemKind, int, int>> cases{
      {ProblemKind::Simon, 5, 0}, {ProblemKind::Serial, 4, 2}, {ProblemKind::SS, 3, 2}, {ProblemKind::SCS, 4, 2}};
  for (const auto& [p, n, d] : cases) {
    const auto rec = generate_instance(p, n, d, std::uint64_t{21});
    const auto text = to_json(rec);
    const auto back = instance_from_json(text);
    EXPECT_EQ(back.problem(), p);
    EXPECT_EQ(back.seed, 21u);
    EXPECT_EQ(to_json(back), text) << to_string(p);
    EXPECT_EQ(to_json(generate_instance(p, n, d, std::uint64_t{21})), text) << "same seed, same bytes";
  }
}

TEST(Instance, TamperedLevelTableRejected) {
  auto j = nlohmann::ordered_json::parse(to_json(generate_instance(ProblemKind::Serial, 3, 1, std::uint64_t{4})));
  auto& v = j["instance"]["L"][0]["values"][0];
  v = v.is_null() ? nlohmann::ordered_json(1) : nlohmann::ordered_json(nullptr);
  EXPECT_EQ(kind_of([&] { instance_from_json(j.dump()); }), ErrorKind::Validation);
}

TEST(Instance, TamperedShufflerRejected) {
  auto j = nlohmann::ordered_json::parse(to_json(generate_instance(ProblemKind::SS, 3, 2, std::uint64_t{5})));
  auto& cell = j["instance"]["shuffler"]["funcs"][0]["values"][0];
  cell = cell.is_null() ? nlohmann::ordered_json(0) : nlohmann::ordered_json(nullptr);
  EXPECT_EQ(kind_of([&] { instance_from_json(j.dump()); }), ErrorKind::Validation);
}

TEST(Instance, WrongSchemaRejected) {
  auto j = nlohmann::ordered_json::parse(to_json(generate_instance(ProblemKind::Simon, 3, 0, std::uint64_t{1})));
  j["schema"] = "something.else";
  EXPECT_THROW(instance_from_json(j.dump()), Error);
  EXPECT_THROW(instance_from_json("{not json"), Error);
}

TEST(Instance, SizeCaps) {
  EXPECT_EQ(kind_of([] { generate_instance(ProblemKind::Simon, 17, 0, std::uint64_t{1}); }), ErrorKind::Unsupported);
  EXPECT_EQ(kind_of([] { generate_instance(ProblemKind::Serial, 11, 1, std::uint64_t{1}); }), ErrorKind::Unsupported);
  EXPECT_EQ(kind_of([] { generate_instance(ProblemKind::SS, 9, 1, std::uint64_t{1}); }), ErrorKind::Unsupported);
  EXPECT_EQ(kind_of([] { generate_instance(ProblemKind::SCS, 4, 9, std::uint64_t{1}); }), ErrorKind::Unsupported);
}

TEST(Instance, ProblemNames) {
  for (auto p : {ProblemKind::Simon, ProblemKind::Serial, ProblemKind::SS, ProblemKind::SCS})
    EXPECT_EQ(parse_problem(to_string(p)), p);
  EXPECT_THROW(parse_problem("sat"), Error);
  EXPECT_THROW(parse_model("bqp"), Error);
  EXPECT_THROW(parse_variant("maybe"), Error);
}

// ---------------------------------------------------------------- experiments

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.problem = "serial";
  c.model = "cq";
  c.depth = 1;
  c.n = 4;
  c.d = 1;
  c.trials = 12;
  c.seed = 3;
  return c;
}

TEST(Experiment, ReportRoundTrip) {
  const auto rep = run_experiment(small_config());
  ASSERT_EQ(rep.rows.size(), 12u);
  const auto text = report_json(rep);
  EXPECT_EQ(text.find("runtime"), std::string::npos);
  const auto back = report_from_json(text);
  EXPECT_EQ(report_json(back), text);
  EXPECT_EQ(back.aggregate.successes, rep.aggregate.successes);
  EXPECT_NE(timing_json(rep).find("runtime"), std::string::npos);
}

TEST(Experiment, DeterministicAcrossRunsAndThreads) {
  auto c = small_config();
  const auto a = report_json(run_experiment(c));
  EXPECT_EQ(report_json(run_experiment(c)), a);
  c.threads = 3;
  EXPECT_EQ(report_json(run_experiment(c)), a);
  EXPECT_EQ(report_csv(run_experiment(c)), report_csv(run_experiment(small_config())));
}

TEST(Experiment, RowSeedsFollowTrialSeedRule) {
  const auto c = small_config();
  const auto rep = run_experiment(c);
  for (const auto& row : rep.rows) EXPECT_EQ(row.seed, trial_seed(c.seed, row.trial));
  EXPECT_NE(trial_seed(3, 0), trial_seed(3, 1));
  EXPECT_NE(trial_seed(3, 0), trial_seed(4, 0));
}

TEST(Experiment, CsvHeader) {
  const auto csv = report_csv(run_experiment(small_config()));
  EXPECT_EQ(csv.rfind("# hqc.report v1\n", 0), 0u);
  EXPECT_EQ(csv.find("runtime"), std::string::npos);
}

TEST(Experiment, ExitCodes) {
  auto c = small_config();
  EXPECT_EQ(run_experiment(c).exit_code(), kExitOk);
  c.threshold = 1.01;
  EXPECT_EQ(run_experiment(c).exit_code(), kExitThreshold);
  ExperimentConfig v;
  v.problem = "scs";
  v.model = "qc";
  v.depth = 3;
  v.n = 4;
  v.d = 2;
  v.trials = 2;
  const auto rep = run_experiment(v);
  EXPECT_FALSE(rep.validated);
  EXPECT_EQ(rep.violation, "depth-exceeded");
  EXPECT_EQ(rep.exit_code(), kExitValidation);
}

TEST(Experiment, UnsupportedPairing) {
  ExperimentConfig c = small_config();
  c.problem = "simon";
  c.model = "cq";
  EXPECT_EQ(kind_of([&] { run_experiment(c); }), ErrorKind::Unsupported);
}

TEST(Experiment, InstanceFileFixesSizes) {
  const auto dir = scratch_dir("instance");
  const auto path = (dir / "inst.json").string();
  write_file(path, to_json(generate_instance(ProblemKind::SCS, 5, 3, std::uint64_t{9})));
  ExperimentConfig c;
  c.problem = "scs";
  c.model = "qc";
  c.instance = path;
  c.trials = 5;
  const auto rep = run_experiment(c);
  EXPECT_EQ(rep.config.n, 5);
  EXPECT_EQ(rep.config.d, 3);
  EXPECT_EQ(rep.aggregate.trials, 5u);
}

TEST(Experiment, Stem) {
  ExperimentConfig c;
  c.problem = "serial";
  c.model = "cq";
  c.depth = 1;
  c.n = 6;
  c.d = 3;
  c.seed = 3;
  EXPECT_EQ(report_stem(c), "serial_cq_d1_n6_k3_s3");
  c.depth = -1;
  c.variant = "decision";
  EXPECT_EQ(report_stem(c), "serial_cq_dauto_n6_k3_s3_decision");
}

// ---------------------------------------------------------------- tables

TEST(Table, CsvRoundTrip) {
  const auto dir = scratch_dir("table");
  auto c = small_config();
  write_file((dir / (report_stem(c) + ".json")).string(), report_json(run_experiment(c)));
  c.seed = 4;
  write_file((dir / (report_stem(c) + ".json")).string(), report_json(run_experiment(c)));
  write_file((dir / "unrelated.json").string(), "{}\n");
  const auto reports = load_reports(dir.string());
  ASSERT_EQ(reports.size(), 2u);
  const auto cells = table_from_reports(reports);
  ASSERT_EQ(cells.size(), 1u);
  EXPECT_EQ(cells[0].estimate.trials, 24u);
  const auto csv = table_csv(cells);
  EXPECT_EQ(table_csv(table_from_csv(csv)), csv);
  EXPECT_NE(render_table(cells).find("SeS"), std::string::npos);
}

TEST(Table, EmptyDirectory) {
  const auto dir = scratch_dir("empty");
  try {
    load_reports(dir.string());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Precondition);
    EXPECT_NE(std::string(e.what()).find("no reports"), std::string::npos);
  }
}

// ---------------------------------------------------------------- suites

TEST(Suites, NamesAndRoundTrip) {
  EXPECT_EQ(suite_names().size(), 6u);
  const auto rep = run_suite("combinatorics", 1);
  EXPECT_TRUE(rep.all_pass());
  const auto text = to_json(rep);
  EXPECT_EQ(to_json(suite_from_json(text)), text);
  EXPECT_THROW(run_suite("nope", 1), Error);
}

}  // namespace
}  // namespace hqc
