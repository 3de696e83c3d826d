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

#include "hqc/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <tuple>
#include <variant>

#include <json.hpp>

namespace hqc {

using Json = nlohmann::ordered_json;

namespace {

struct Caps {
  int max_n;
  int max_d;
};

Caps caps_for(ProblemKind p) {
  switch (p) {
    case ProblemKind::Simon: return {16, 0};
    case ProblemKind::Serial: return {10, 12};
    case ProblemKind::SS: return {8, 8};
    case ProblemKind::SCS: return {8, 8};
  }
  return {0, 0};
}

std::string fmt_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

std::string display_problem(const std::string& p) {
  if (p == "simon") return "Simon";
  if (p == "serial") return "SeS";
  if (p == "ss") return "d-SS";
  if (p == "scs") return "d-SCS";
  return p;
}

std::string upper(std::string s) {
  for (auto& ch : s) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return s;
}

Json estimate_json(const Estimate& e) {
  return Json{{"successes", e.successes}, {"trials", e.trials}, {"rate", e.rate}, {"ci", Json::array({e.lo, e.hi})}};
}

}  // namespace

int ExperimentReport::exit_code() const {
  if (!validated) return kExitValidation;
  return meets_threshold() ? kExitOk : kExitThreshold;
}

Model parse_model(const std::string& name) {
  if (name == "qnc") return Model::QNC;
  if (name == "qc") return Model::QC;
  if (name == "cq") return Model::CQ;
  throw Error(ErrorKind::Precondition, "unknown model '" + name + "'");
}

Variant parse_variant(const std::string& name) {
  if (name == "search") return Variant::Search;
  if (name == "decision") return Variant::Decision;
  throw Error(ErrorKind::Precondition, "unknown variant '" + name + "'");
}

std::uint64_t trial_seed(std::uint64_t master, int trial) {
  Rng r = split_rng(master, static_cast<std::uint64_t>(trial));
  return r();
}

InstanceRecord generate_instance(ProblemKind problem, int n, int d, Rng& rng, Variant variant) {
  const auto caps = caps_for(problem);
  if (n < 2 || n > caps.max_n)
    throw Error(ErrorKind::Unsupported, std::string(to_string(problem)) + ": n=" + std::to_string(n) +
                                            " outside the supported range [2, " + std::to_string(caps.max_n) + "]");
  if (problem != ProblemKind::Simon && (d < 1 || d > caps.max_d))
    throw Error(ErrorKind::Unsupported, std::string(to_string(problem)) + ": d=" + std::to_string(d) +
                                            " outside the supported range [1, " + std::to_string(caps.max_d) + "]");
  if (variant == Variant::Decision && problem != ProblemKind::Serial)
    throw Error(ErrorKind::Unsupported, "decision variant is only generated for serial");
  InstanceRecord rec;
  switch (problem) {
    case ProblemKind::Simon: rec.instance = sample_simon(n, rng); break;
    case ProblemKind::Serial: rec.instance = sample_serial(d, n, rng, variant); break;
    case ProblemKind::SS: rec.instance = sample_ss(d, n, rng); break;
    case ProblemKind::SCS: rec.instance = sample_scs(d, n, rng); break;
  }
  return rec;
}

InstanceRecord generate_instance(ProblemKind problem, int n, int d, std::uint64_t seed, Variant variant) {
  Rng rng(seed);
  auto rec = generate_instance(problem, n, d, rng, variant);
  rec.seed = seed;
  return rec;
}

SolverReport solve_record(const InstanceRecord& record, Model model, int budget, Rng& rng) {
  const auto problem = record.problem();
  auto none = [&]() -> SolverReport {
    throw Error(ErrorKind::Unsupported, std::string("no solver for ") + to_string(problem) + " in " + to_string(model));
  };
  switch (problem) {
    case ProblemKind::Simon:
      if (model == Model::QNC) return solve_simon_qnc(std::get<SimonInstance>(record.instance), rng, budget);
      return none();
    case ProblemKind::Serial: {
      const auto& inst = std::get<SerialInstance>(record.instance);
      if (model == Model::CQ && inst.variant == Variant::Search) return solve_serial_cq1(inst, rng, budget);
      if (model == Model::QC) return solve_serial_qc(inst, rng, budget);
      return none();
    }
    case ProblemKind::SS:
      if (model == Model::CQ) return solve_ss_cq(std::get<SSInstance>(record.instance), rng, budget);
      return none();
    case ProblemKind::SCS:
      if (model == Model::QC) return solve_scs_qc4(std::get<SCSInstance>(record.instance), rng, budget);
      if (model == Model::CQ) return solve_scs_cq(std::get<SCSInstance>(record.instance), rng, budget);
      return none();
  }
  return none();
}

bool solver_succeeded(const InstanceRecord& record, const SolverReport& report) {
  if (!report.validated || !report.answer) return false;
  const auto a = *report.answer;
  return std::visit(
      [a](const auto& inst) -> bool {
        using T = std::decay_t<decltype(inst)>;
        if constexpr (std::is_same_v<T, SimonInstance>) {
          return a == inst.s;
        } else if constexpr (std::is_same_v<T, SerialInstance>) {
          return inst.variant == Variant::Decision ? a == static_cast<std::uint64_t>(inst.label) : a == inst.answer;
        } else if constexpr (std::is_same_v<T, SSInstance>) {
          return a == inst.s;
        } else {
          return a == inst.s();
        }
      },
      record.instance);
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  ExperimentReport rep;
  rep.config = config;
  if (config.trials < 1) throw Error(ErrorKind::Precondition, "trials must be positive");
  const Model model = parse_model(config.model);
  const Variant variant = parse_variant(config.variant);
  std::optional<InstanceRecord> fixed;
  ProblemKind problem;
  if (!config.instance.empty()) {
    fixed = instance_from_json(read_file(config.instance));
    problem = fixed->problem();
    rep.config.problem = to_string(problem);
    std::visit(
        [&rep](const auto& inst) {
          using T = std::decay_t<decltype(inst)>;
          if constexpr (std::is_same_v<T, SimonInstance>) {
            rep.config.n = inst.n;
          } else if constexpr (std::is_same_v<T, SerialInstance>) {
            rep.config.n = inst.n;
            rep.config.d = inst.c;
            rep.config.variant = inst.variant == Variant::Search ? "search" : "decision";
          } else if constexpr (std::is_same_v<T, SSInstance>) {
            rep.config.n = inst.shuffler.n;
            rep.config.d = inst.shuffler.d;
          } else {
            rep.config.n = inst.n;
            rep.config.d = inst.d;
          }
        },
        fixed->instance);
  } else {
    problem = parse_problem(config.problem);
    generate_instance(problem, config.n, config.d, std::uint64_t{0}, variant);  // cap check up front
  }

  std::vector<TrialRow> rows(config.trials);
  std::vector<std::string> solver(config.trials), violation(config.trials);
  std::vector<char> valid(config.trials, 1);
  parallel_trials(config.trials, config.seed, config.threads, [&](int t, Rng& stream) {
    const auto t0 = std::chrono::steady_clock::now();
    TrialRow& row = rows[t];
    row.trial = t;
    row.seed = stream();
    Rng rng(row.seed);
    const InstanceRecord rec = fixed ? *fixed : generate_instance(problem, config.n, config.d, rng, variant);
    const auto rpt = solve_record(rec, model, config.depth, rng);
    solver[t] = rpt.solver;
    valid[t] = rpt.validated;
    violation[t] = rpt.violation;
    row.success = solver_succeeded(rec, rpt);
    row.depth_used = rpt.depth;
    row.oracle_layers = rpt.oracle_layers;
    row.quantum_queries = rpt.quantum_queries;
    row.classical_queries = rpt.classical_queries;
    row.failure = rpt.failure;
    row.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  });
  rep.rows = std::move(rows);
  rep.solver = solver.front();
  for (int t = 0; t < config.trials; ++t)
    if (!valid[t]) {
      rep.validated = false;
      rep.violation = violation[t];
      break;
    }
  rep.aggregate = aggregate_rows(rep.rows);
  return rep;
}

Estimate aggregate_rows(const std::vector<TrialRow>& rows) {
  const auto wins = std::count_if(rows.begin(), rows.end(), [](const TrialRow& r) { return r.success; });
  return wilson(static_cast<std::uint64_t>(wins), rows.size());
}

std::string report_json(const ExperimentReport& r) {
  const auto& c = r.config;
  Json j{{"schema", kReportSchema}, {"version", kSchemaVersion}};
  j["config"] = Json{{"problem", c.problem}, {"model", c.model},     {"variant", c.variant},
                     {"n", c.n},             {"d", c.d},             {"depth", c.depth},
                     {"trials", c.trials},   {"seed", c.seed},       {"threshold", c.threshold},
                     {"instance", c.instance}};
  j["solver"] = r.solver;
  j["validated"] = r.validated;
  j["violation"] = r.violation;
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back(Json{{"trial", row.trial},
                        {"seed", row.seed},
                        {"success", row.success},
                        {"depth_used", row.depth_used},
                        {"oracle_layers", row.oracle_layers},
                        {"quantum_queries", row.quantum_queries},
                        {"classical_queries", row.classical_queries},
                        {"failure", row.failure}});
  j["rows"] = std::move(rows);
  j["aggregate"] = estimate_json(r.aggregate);
  return j.dump(2) + "\n";
}

std::string timing_json(const ExperimentReport& r) {
  Json j{{"schema", kTimingSchema}, {"version", kSchemaVersion}, {"report", report_stem(r.config)}};
  Json rows = Json::array();
  double total = 0;
  for (const auto& row : r.rows) {
    rows.push_back(Json{{"trial", row.trial}, {"runtime_ms", row.runtime_ms}});
    total += row.runtime_ms;
  }
  j["total_ms"] = total;
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

std::string report_csv(const ExperimentReport& r) {
  std::ostringstream out;
  out << "# " << kReportSchema << " v" << kSchemaVersion << "\n";
  out << "trial,seed,success,depth_used,oracle_layers,quantum_queries,classical_queries,failure\n";
  for (const auto& row : r.rows) {
    std::string failure = row.failure;
    std::replace(failure.begin(), failure.end(), ',', ';');
    out << row.trial << ',' << row.seed << ',' << (row.success ? 1 : 0) << ',' << row.depth_used << ','
        << row.oracle_layers << ',' << row.quantum_queries << ',' << row.classical_queries << ',' << failure << "\n";
  }
  return out.str();
}

ExperimentReport report_from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Validation, std::string("malformed report: ") + e.what());
  }
  if (!j.is_object() || j.value("schema", "") != kReportSchema || j.value("version", -1) != kSchemaVersion)
    throw Error(ErrorKind::Validation, "not a report");
  ExperimentReport r;
  try {
    const auto& c = j.at("config");
    r.config.problem = c.at("problem").get<std::string>();
    r.config.model = c.at("model").get<std::string>();
    r.config.variant = c.at("variant").get<std::string>();
    r.config.n = c.at("n").get<int>();
    r.config.d = c.at("d").get<int>();
    r.config.depth = c.at("depth").get<int>();
    r.config.trials = c.at("trials").get<int>();
    r.config.seed = c.at("seed").get<std::uint64_t>();
    r.config.threshold = c.at("threshold").get<double>();
    r.config.instance = c.at("instance").get<std::string>();
    r.solver = j.at("solver").get<std::string>();
    r.validated = j.at("validated").get<bool>();
    r.violation = j.at("violation").get<std::string>();
    for (const auto& row : j.at("rows")) {
      TrialRow t;
      t.trial = row.at("trial").get<int>();
      t.seed = row.at("seed").get<std::uint64_t>();
      t.success = row.at("success").get<bool>();
      t.depth_used = row.at("depth_used").get<int>();
      t.oracle_layers = row.at("oracle_layers").get<int>();
      t.quantum_queries = row.at("quantum_queries").get<std::uint64_t>();
      t.classical_queries = row.at("classical_queries").get<std::uint64_t>();
      t.failure = row.at("failure").get<std::string>();
      r.rows.push_back(std::move(t));
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Validation, std::string("malformed report: ") + e.what());
  }
  r.aggregate = aggregate_rows(r.rows);
  return r;
}

std::string report_stem(const ExperimentConfig& c) {
  std::string s = c.problem + "_" + c.model;
  s += c.depth >= 0 ? "_d" + std::to_string(c.depth) : std::string("_dauto");
  s += "_n" + std::to_string(c.n) + "_k" + std::to_string(c.d) + "_s" + std::to_string(c.seed);
  if (c.variant != "search") s += "_" + c.variant;
  return s;
}

std::vector<TableCell> table_from_reports(const std::vector<ExperimentReport>& reports) {
  using Key = std::tuple<std::string, std::string, int, int, int>;
  std::map<Key, std::pair<std::uint64_t, std::uint64_t>> acc;
  for (const auto& r : reports) {
    if (!r.validated || r.rows.empty()) continue;
    int depth = 0;
    std::uint64_t wins = 0;
    for (const auto& row : r.rows) {
      depth = std::max(depth, row.depth_used);
      wins += row.success;
    }
    auto& a = acc[Key{r.config.problem, r.config.model, depth, r.config.n, r.config.d}];
    a.first += wins;
    a.second += r.rows.size();
  }
  std::vector<TableCell> out;
  for (const auto& [k, v] : acc)
    out.push_back(TableCell{std::get<0>(k), std::get<1>(k), std::get<2>(k), std::get<3>(k), std::get<4>(k),
                            wilson(v.first, v.second)});
  return out;
}

std::string render_table(const std::vector<TableCell>& cells) {
  if (cells.empty()) return "no reports\n";
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "%-7s %-5s %5s %3s %3s %8s  %-17s %7s\n", "problem", "model", "depth", "n", "d",
                "success", "95% CI", "trials");
  out << line;
  for (const auto& c : cells) {
    char ci[40];
    std::snprintf(ci, sizeof ci, "[%.3f, %.3f]", c.estimate.lo, c.estimate.hi);
    std::snprintf(line, sizeof line, "%-7s %-5s %5d %3d %3d %8.3f  %-17s %7llu\n", display_problem(c.problem).c_str(),
                  upper(c.model).c_str(), c.depth, c.n, c.d, c.estimate.rate, ci,
                  static_cast<unsigned long long>(c.estimate.trials));
    out << line;
  }
  return out.str();
}

std::string table_csv(const std::vector<TableCell>& cells) {
  std::ostringstream out;
  out << "# " << kTableSchema << " v" << kSchemaVersion << "\n";
  out << "problem,model,depth,n,d,successes,trials,rate,ci_lo,ci_hi\n";
  for (const auto& c : cells)
    out << c.problem << ',' << c.model << ',' << c.depth << ',' << c.n << ',' << c.d << ',' << c.estimate.successes
        << ',' << c.estimate.trials << ',' << fmt_double(c.estimate.rate) << ',' << fmt_double(c.estimate.lo) << ','
        << fmt_double(c.estimate.hi) << "\n";
  return out.str();
}

std::vector<TableCell> table_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<TableCell> out;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      header = true;
      continue;
    }
    const auto f = split_csv(line);
    if (f.size() != 10) throw Error(ErrorKind::Validation, "table row with " + std::to_string(f.size()) + " fields");
    TableCell c;
    c.problem = f[0];
    c.model = f[1];
    c.depth = std::stoi(f[2]);
    c.n = std::stoi(f[3]);
    c.d = std::stoi(f[4]);
    c.estimate.successes = std::stoull(f[5]);
    c.estimate.trials = std::stoull(f[6]);
    c.estimate.rate = std::stod(f[7]);
    c.estimate.lo = std::stod(f[8]);
    c.estimate.hi = std::stod(f[9]);
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<ExperimentReport> load_reports(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw Error(ErrorKind::Precondition, "no reports: '" + dir + "' is not a directory");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<ExperimentReport> out;
  for (const auto& f : files) {
    try {
      out.push_back(report_from_json(read_file(f.string())));
    } catch (const Error&) {
      // instances, suites and timing files share the directory
    }
  }
  if (out.empty()) throw Error(ErrorKind::Precondition, "no reports in '" + dir + "'");
  return out;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"combinatorics", "shuffler", "decomposition",
                                              "o2h",           "find",     "hardness-probe"};
  return names;
}

SuiteReport run_suite(const std::string& suite, std::uint64_t seed) {
  if (suite == "combinatorics") {
    auto r = verify_combinatorics();
    r.seed = seed;
    return r;
  }
  if (suite == "shuffler") return verify_shuffler(seed);
  if (suite == "decomposition") return verify_decomposition(seed);
  if (suite == "o2h") return verify_o2h(seed);
  if (suite == "find") return verify_find(seed);
  if (suite == "hardness-probe") return verify_hardness_probe(seed);
  throw Error(ErrorKind::Precondition, "unknown suite '" + suite + "'");
}

std::string default_out_dir() {
  const char* env = std::getenv(kOutDirEnv);
  return env && *env ? std::string(env) : std::string(".");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Precondition, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Precondition, "cannot write '" + path + "'");
  out << content;
}

}  // namespace hqc
