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

#include "hqc/serialize.hpp"

#include <json.hpp>

namespace hqc {

using Json = nlohmann::ordered_json;

const char* to_string(ProblemKind p) {
  switch (p) {
    case ProblemKind::Simon: return "simon";
    case ProblemKind::Serial: return "serial";
    case ProblemKind::SS: return "ss";
    case ProblemKind::SCS: return "scs";
  }
  return "?";
}

ProblemKind parse_problem(const std::string& name) {
  for (auto p : {ProblemKind::Simon, ProblemKind::Serial, ProblemKind::SS, ProblemKind::SCS})
    if (name == to_string(p)) return p;
  throw Error(ErrorKind::Precondition, "unknown problem '" + name + "'");
}

namespace {

[[noreturn]] void reject(const std::string& what) { throw Error(ErrorKind::Validation, "instance: " + what); }

Json table_json(const FunctionTable& t) {
  Json v = Json::array();
  for (std::uint64_t x = 0; x < t.size(); ++x) {
    const auto y = t.at(x);
    if (y == kBottom)
      v.push_back(nullptr);
    else
      v.push_back(y);
  }
  return Json{{"in", t.in_bits()}, {"out", t.out_bits()}, {"values", std::move(v)}};
}

FunctionTable table_from(const Json& j) {
  FunctionTable t(j.at("in").get<int>(), j.at("out").get<int>());
  const auto& v = j.at("values");
  if (v.size() != t.size()) reject("table has " + std::to_string(v.size()) + " entries, expected " + std::to_string(t.size()));
  for (std::uint64_t x = 0; x < t.size(); ++x)
    if (!v[x].is_null()) t.set(x, v[x].get<std::uint64_t>());
  return t;
}

Json tables_json(const std::vector<FunctionTable>& ts) {
  Json a = Json::array();
  for (const auto& t : ts) a.push_back(table_json(t));
  return a;
}

std::vector<FunctionTable> tables_from(const Json& j) {
  std::vector<FunctionTable> out;
  for (const auto& t : j) out.push_back(table_from(t));
  return out;
}

void check_period(const FunctionTable& f, std::uint64_t s, const std::string& what) {
  if (s == 0) reject(what + ": zero period");
  for (std::uint64_t x = 0; x < f.size(); ++x)
    if (f.at(x) != f.at(x ^ s)) reject(what + ": period check failed");
}

Json simon_json(const SimonInstance& g) {
  return Json{{"n", g.n}, {"s", g.s}, {"f", table_json(g.table)}};
}

SimonInstance simon_from(const Json& j) {
  SimonInstance g;
  g.n = j.at("n").get<int>();
  g.s = j.at("s").get<std::uint64_t>();
  g.table = table_from(j.at("f"));
  if (g.table.in_bits() != g.n) reject("simon table width");
  check_period(g.table, g.s, "simon");
  return g;
}

Json shuffler_json(const ShufflerInstance& xi) {
  return Json{{"d", xi.d}, {"n", xi.n}, {"tuples", xi.tuples}, {"funcs", tables_json(xi.funcs)},
              {"hidden", table_json(xi.hidden)}};
}

ShufflerInstance shuffler_from(const Json& j) {
  const int d = j.at("d").get<int>();
  const int n = j.at("n").get<int>();
  auto tuples = j.at("tuples").get<std::vector<std::vector<std::uint64_t>>>();
  const auto hidden = table_from(j.at("hidden"));
  ShufflerInstance xi;
  try {
    xi = shuffler_from_tuples(d, n, std::move(tuples), hidden);
  } catch (const Error& e) {
    reject(std::string("shuffler: ") + e.what());
  }
  if (tables_from(j.at("funcs")) != xi.funcs) reject("shuffler function view disagrees with its tuples");
  if (!shuffler_views_agree(xi)) reject("shuffler views disagree");
  return xi;
}

const char* variant_name(Variant v) { return v == Variant::Search ? "search" : "decision"; }

Variant variant_from(const Json& j) {
  const auto s = j.get<std::string>();
  if (s == "search") return Variant::Search;
  if (s == "decision") return Variant::Decision;
  reject("unknown variant '" + s + "'");
}

Json stochastic_json(const StochasticOracleSpec& s) {
  return Json{{"query_bits", s.query_bits}, {"payload_bits", s.payload_bits}, {"y_bits", s.y_bits},
              {"ys", s.ys}, {"probs", s.probs}, {"payload", tables_json(s.payload)}};
}

bool same_stochastic(const StochasticOracleSpec& a, const StochasticOracleSpec& b) {
  return a.query_bits == b.query_bits && a.payload_bits == b.payload_bits && a.y_bits == b.y_bits && a.ys == b.ys &&
         a.probs == b.probs && a.payload == b.payload;
}

Json body(const SimonInstance& g) { return simon_json(g); }

Json body(const SerialInstance& s) {
  return Json{{"c", s.c},          {"n", s.n},          {"variant", variant_name(s.variant)},
              {"label", s.label},  {"answer", s.answer}, {"s", s.s},
              {"f", tables_json(s.f)}, {"L", tables_json(s.L)}};
}

Json body(const SSInstance& s) {
  return Json{{"s", s.s}, {"variant", variant_name(s.variant)}, {"label", s.label},
              {"shuffler", shuffler_json(s.shuffler)}};
}

Json body(const SCSInstance& s) {
  return Json{{"n", s.n},
              {"d", s.d},
              {"f", table_json(s.f)},
              {"g", simon_json(s.g)},
              {"p", table_json(s.p)},
              {"p_inv", table_json(s.p_inv)},
              {"h", table_json(s.h)},
              {"shuffler", shuffler_json(s.shuffler)},
              {"p_prime", table_json(s.p_prime)},
              {"p_prime_inv", table_json(s.p_prime_inv)},
              {"stochastic", stochastic_json(s.stochastic)}};
}

SerialInstance serial_from(const Json& j) {
  SerialInstance s;
  s.c = j.at("c").get<int>();
  s.n = j.at("n").get<int>();
  s.variant = variant_from(j.at("variant"));
  s.label = j.at("label").get<int>();
  s.answer = j.at("answer").get<std::uint64_t>();
  s.s = j.at("s").get<std::vector<std::uint64_t>>();
  s.f = tables_from(j.at("f"));
  if (s.c < 1 || static_cast<int>(s.s.size()) != s.c || static_cast<int>(s.f.size()) != s.c + 1)
    reject("serial chain sizes");
  for (int i = 0; i < s.c; ++i) check_period(s.f[i], s.s[i], "serial level " + std::to_string(i));
  if (s.variant == Variant::Search || s.label == 0) check_period(s.f[s.c], s.answer, "serial inner oracle");
  try {
    s.L.push_back(serial_level_table(s.f[0], s.n, false, 0));
    for (int i = 1; i <= s.c; ++i) s.L.push_back(serial_level_table(s.f[i], s.n, true, s.s[i - 1]));
  } catch (const Error& e) {
    reject(std::string("serial: ") + e.what());
  }
  if (tables_from(j.at("L")) != s.L) reject("serial gate tables disagree with the key chain");
  return s;
}

SSInstance ss_from(const Json& j) {
  SSInstance s;
  s.s = j.at("s").get<std::uint64_t>();
  s.variant = variant_from(j.at("variant"));
  s.label = j.at("label").get<int>();
  s.shuffler = shuffler_from(j.at("shuffler"));
  if (s.variant == Variant::Search || s.label == 0) check_period(s.shuffler.hidden, s.s, "ss hidden function");
  return s;
}

SCSInstance scs_from(const Json& j) {
  SCSInstance s;
  s.n = j.at("n").get<int>();
  s.d = j.at("d").get<int>();
  s.f = table_from(j.at("f"));
  s.g = simon_from(j.at("g"));
  s.h = table_from(j.at("h"));
  try {
    s.p = cs_map(s.f, s.g.table);
  } catch (const Error& e) {
    reject(std::string("scs: ") + e.what());
  }
  const std::uint64_t N = std::uint64_t{1} << s.n;
  s.p_inv = FunctionTable(s.n, s.n);
  for (std::uint64_t x = 0; x < N; ++x) s.p_inv.set(s.p.at(x), x);
  s.shuffler = shuffler_from(j.at("shuffler"));
  if (s.shuffler.hidden != s.h || s.shuffler.d != s.d) reject("scs shuffler does not hide h");
  s.p_prime = FunctionTable(2 * s.n, s.n);
  s.p_prime_inv = FunctionTable(2 * s.n, s.n);
  for (std::uint64_t x = 0; x < N; ++x) {
    const std::uint64_t key = s.h.at(s.f.at(x));
    s.p_prime.set(pack_pair(key, x, s.n), s.p.at(x));
    s.p_prime_inv.set(pack_pair(key, s.p.at(x), s.n), x);
  }
  s.stochastic = collision_oracle(s.f);
  if (table_from(j.at("p")) != s.p || table_from(j.at("p_inv")) != s.p_inv) reject("scs bijection disagrees");
  if (table_from(j.at("p_prime")) != s.p_prime || table_from(j.at("p_prime_inv")) != s.p_prime_inv)
    reject("scs keyed maps disagree");
  const auto& st = j.at("stochastic");
  StochasticOracleSpec stored;
  stored.query_bits = st.at("query_bits").get<int>();
  stored.payload_bits = st.at("payload_bits").get<int>();
  stored.y_bits = st.at("y_bits").get<int>();
  stored.ys = st.at("ys").get<std::vector<std::uint64_t>>();
  stored.probs = st.at("probs").get<std::vector<double>>();
  stored.payload = tables_from(st.at("payload"));
  if (!same_stochastic(stored, s.stochastic)) reject("scs stochastic oracle disagrees with f");
  return s;
}

Json header(const char* schema) { return Json{{"schema", schema}, {"version", kSchemaVersion}}; }

Json parse_with_schema(const std::string& text, const char* schema) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Validation, std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object() || j.value("schema", "") != schema)
    throw Error(ErrorKind::Validation, std::string("expected schema ") + schema);
  if (j.value("version", -1) != kSchemaVersion)
    throw Error(ErrorKind::Validation, "unsupported schema version " + j.value("version", Json(-1)).dump());
  return j;
}

}  // namespace

std::string to_json(const InstanceRecord& record) {
  Json j = header(kInstanceSchema);
  j["problem"] = to_string(record.problem());
  j["seed"] = record.seed;
  j["instance"] = std::visit([](const auto& inst) { return body(inst); }, record.instance);
  return j.dump(2) + "\n";
}

InstanceRecord instance_from_json(const std::string& text) {
  const Json j = parse_with_schema(text, kInstanceSchema);
  InstanceRecord r;
  try {
    r.seed = j.at("seed").get<std::uint64_t>();
    const auto& b = j.at("instance");
    switch (parse_problem(j.at("problem").get<std::string>())) {
      case ProblemKind::Simon: r.instance = simon_from(b); break;
      case ProblemKind::Serial: r.instance = serial_from(b); break;
      case ProblemKind::SS: r.instance = ss_from(b); break;
      case ProblemKind::SCS: r.instance = scs_from(b); break;
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Validation, std::string("instance: ") + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Validation) throw;
    throw Error(ErrorKind::Validation, std::string("instance: ") + e.what());
  }
  return r;
}

std::string to_json(const SuiteReport& report) {
  Json j = header(kSuiteSchema);
  j["suite"] = report.suite;
  j["seed"] = report.seed;
  j["pass"] = report.all_pass();
  Json checks = Json::array();
  for (const auto& c : report.checks)
    checks.push_back(Json{{"name", c.name},
                          {"statistic", c.statistic},
                          {"bound", c.bound},
                          {"ci", Json::array({c.lo, c.hi})},
                          {"pass", c.pass},
                          {"detail", c.detail}});
  j["checks"] = std::move(checks);
  return j.dump(2) + "\n";
}

SuiteReport suite_from_json(const std::string& text) {
  const Json j = parse_with_schema(text, kSuiteSchema);
  SuiteReport r;
  r.suite = j.at("suite").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& c : j.at("checks")) {
    CheckResult k;
    k.name = c.at("name").get<std::string>();
    k.statistic = c.at("statistic").get<double>();
    k.bound = c.at("bound").get<double>();
    k.lo = c.at("ci").at(0).get<double>();
    k.hi = c.at("ci").at(1).get<double>();
    k.pass = c.at("pass").get<bool>();
    k.detail = c.at("detail").get<std::string>();
    r.checks.push_back(std::move(k));
  }
  return r;
}

std::string to_json(const SolverReport& r) {
  Json j = header(kSolverSchema);
  j["solver"] = r.solver;
  j["model"] = to_string(r.model);
  j["budget"] = r.budget;
  j["validated"] = r.validated;
  j["violation"] = r.violation;
  j["answer"] = r.answer ? Json(*r.answer) : Json(nullptr);
  j["failure"] = r.failure;
  j["rounds"] = r.rounds;
  j["depth"] = r.depth;
  j["oracle_layers"] = r.oracle_layers;
  j["quantum_queries"] = r.quantum_queries;
  j["classical_queries"] = r.classical_queries;
  j["rows"] = r.rows;
  j["transcript_rounds"] = r.transcript.rounds.size();
  return j.dump(2) + "\n";
}

}  // namespace hqc
