// Copyright 2026 The tcprio Authors.
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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 when any
// criterion fails. Each line carries the measured values.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fixtures.h"
#include "synthetic.h"
#include "tcprio/cli.h"
#include "tcprio/ga.h"
#include "tcprio/oracle.h"

using namespace tcprio;
using tcprio::testing::Pipeline;
using Json = nlohmann::json;

namespace {

// Timing limits in seconds.
constexpr double kAnalyzeLimit = 1.0;
constexpr double kSweepLimit = 10.0;
// GA sweep: seeds 0..kSweepSeeds-1, at least kSweepRequired must reach the
// enumerated maximum within kSweepIterations.
constexpr std::uint64_t kSweepSeeds = 100;
constexpr std::size_t kSweepRequired = 95;
constexpr std::size_t kSweepIterations = 50;
constexpr int kSyntheticGraphs = 50;

struct Row {
  long a;
  long b;
  long total;
};

const std::map<std::string, Row> kShipping = {
    {"1", {18, 0, 18}},  {"2", {17, 1, 18}},  {"3", {16, 1, 17}},  {"4", {15, 2, 17}},
    {"5", {14, 1, 15}},  {"6", {14, 1, 15}},  {"7", {13, 2, 15}},  {"8", {13, 2, 15}},
    {"9", {12, 1, 57}},  {"10", {12, 2, 14}}, {"11", {10, 2, 12}}, {"12", {11, 1, 12}},
    {"13", {18, 1, 19}}, {"14", {9, 1, 10}},  {"15", {8, 2, 10}},  {"16", {7, 2, 9}},
    {"17", {6, 2, 8}},   {"18", {5, 1, 6}},   {"19", {4, 1, 5}},   {"20", {3, 2, 5}},
    {"21", {30, 2, 32}}, {"22", {22, 0, 22}},
};

const std::vector<long> kModifyOrderTotals = {8, 8, 8, 6, 5, 5, 3, 1};

const std::map<std::string, Row> kEnrolment = {
    {"1", {6, 0, 6}}, {"2", {5, 2, 7}}, {"3", {4, 2, 6}}, {"4", {3, 6, 9}},
    {"5", {2, 2, 4}}, {"6", {2, 3, 5}}, {"7", {7, 0, 7}},
};

const std::set<std::vector<std::string>> kDeclaredCombinations = {
    {"e1", "e2", "e4", "e7"},   {"e1", "e2", "e4", "e10"},  {"e1", "e2", "e5", "e7"},
    {"e1", "e2", "e5", "e10"},  {"e1", "e2", "e11", "e7"},  {"e1", "e2", "e11", "e10"},
    {"e1", "e9", "e4", "e7"},   {"e1", "e9", "e4", "e10"},  {"e1", "e9", "e5", "e7"},
    {"e1", "e9", "e5", "e10"},  {"e1", "e9", "e11", "e7"},  {"e1", "e9", "e11", "e10"},
    {"e12", "e2", "e4", "e7"},  {"e12", "e2", "e4", "e10"}, {"e12", "e2", "e5", "e7"},
    {"e12", "e2", "e5", "e10"}, {"e12", "e2", "e11", "e7"}, {"e12", "e2", "e11", "e10"},
    {"e12", "e9", "e4", "e7"},  {"e12", "e9", "e4", "e10"}, {"e12", "e9", "e5", "e7"},
    {"e12", "e9", "e5", "e10"}, {"e12", "e9", "e11", "e7"}, {"e12", "e9", "e11", "e10"},
    {"e1", "e2", "e3", "e7"},   {"e1", "e2", "e3", "e10"},  {"e1", "e9", "e3", "e7"},
    {"e1", "e9", "e3", "e10"},  {"e12", "e2", "e3", "e7"},  {"e12", "e2", "e3", "e10"},
    {"e12", "e9", "e3", "e7"},  {"e12", "e9", "e3", "e10"},
};

// Collects failed expectations for one criterion.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    ++count_;
    if (!ok) failures_.push_back(what);
  }
  bool ok() const { return failures_.empty(); }
  std::size_t count() const { return count_; }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  std::size_t count_ = 0;
  std::vector<std::string> failures_;
};

std::string str(long v) { return std::to_string(v); }

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3fs", s);
  return buf;
}

std::vector<long> contributions(const NodeWeight& w) {
  std::vector<long> out;
  for (const StackPush& p : w.pushLog) out.push_back(p.contribution);
  return out;
}

std::string joined(const std::vector<long>& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + std::to_string(v[i]);
  return out;
}

Pipeline synthetic(int seed, bool statechart) {
  tcprio::testing::SyntheticSpec spec;
  spec.seed = static_cast<std::uint64_t>(seed);
  spec.statechart = statechart;
  return tcprio::testing::make_pipeline(parse_model(tcprio::testing::synthetic_model_text(spec)));
}

// Runs the command line in-process and parses its JSON report.
Json analyze_json(const std::string& file, Checks& checks) {
  const std::string model = tcprio::testing::fixture_path(file).string();
  const char* argv[] = {"tcprio", "analyze", "--model", model.c_str(), "--format", "json"};
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(6, argv, out, err);
  checks.expect(code == 0, "analyze exit code " + str(code) + ": " + err.str());
  return code == 0 ? Json::parse(out.str()) : Json::object();
}

void check_rows(const Json& rows, const std::map<std::string, Row>& expected, Checks& checks) {
  checks.expect(rows.size() == expected.size(),
                "row count " + str(static_cast<long>(rows.size())));
  std::set<std::string> seen;
  for (const Json& r : rows) {
    const std::string id = r.at("node").get<std::string>();
    seen.insert(id);
    auto it = expected.find(id);
    if (it == expected.end()) {
      checks.expect(false, "unexpected row " + id);
      continue;
    }
    const long a = r.at("A").get<long>();
    const long b = r.at("B").get<long>();
    const long total = r.at("total").get<long>();
    checks.expect(a == it->second.a && b == it->second.b && total == it->second.total,
                  "node " + id + ": (" + str(a) + "," + str(b) + "," + str(total) + ") expected (" +
                      str(it->second.a) + "," + str(it->second.b) + "," + str(it->second.total) +
                      ")");
  }
  checks.expect(seen.size() == expected.size(), "missing rows");
}

// Every cell that is not pinned equals its computed value, and the pinned set
// is exactly `pins` ("node:A" / "node:B").
void check_pins(const WeightTable& t, const std::set<std::string>& pins, Checks& checks) {
  std::set<std::string> got;
  for (const NodeWeight& w : t.rows()) {
    if (w.stackPinned) got.insert(w.node.str() + ":A");
    if (w.ifPinned) got.insert(w.node.str() + ":B");
    if (!w.stackPinned) {
      checks.expect(w.stackWeight == w.computedStackWeight, "A(" + w.node.str() + ") not computed");
    }
    if (!w.ifPinned) {
      checks.expect(w.ifComplexity == w.computedIfComplexity, "B(" + w.node.str() + ") not computed");
    }
  }
  checks.expect(got == pins, "pinned cell set differs");
}

Checks ac1(std::string& detail) {
  Checks checks;
  const auto start = std::chrono::steady_clock::now();
  Json report = analyze_json("shipping_order.model", checks);
  const double elapsed = seconds_since(start);
  if (!checks.ok()) return checks;
  const Json& w = report.at("weights");
  check_rows(w.at("rows"), kShipping, checks);
  checks.expect(w.at("s_max").get<long>() == 18, "s_max " + str(w.at("s_max").get<long>()));
  checks.expect(elapsed < kAnalyzeLimit, "analyze took " + fmt_seconds(elapsed));
  check_pins(tcprio::testing::shipping().weights, {"7:B", "13:B", "15:B", "21:B", "22:A"}, checks);
  detail = "22 rows, s_max " + str(w.at("s_max").get<long>()) + ", A(13)=" +
           str(tcprio::testing::shipping().weights.at(NodeId("13")).stackWeight) + ", A(21)=" +
           str(tcprio::testing::shipping().weights.at(NodeId("21")).stackWeight) +
           ", analyze " + fmt_seconds(elapsed);
  return checks;
}

Checks ac2(std::string& detail) {
  Checks checks;
  Json report = analyze_json("shipping_order.model", checks);
  if (!checks.ok()) return checks;
  const Json& nested = report.at("weights").at("nested");
  checks.expect(nested.contains("9"), "no nested table on node 9");
  if (!checks.ok()) return checks;
  std::vector<long> totals;
  for (const Json& r : nested.at("9").at("rows")) totals.push_back(r.at("total").get<long>());
  const long sum = nested.at("9").at("grand_total").get<long>();
  long node9 = -1;
  for (const Json& r : report.at("weights").at("rows")) {
    if (r.at("node") == "9") node9 = r.at("total").get<long>();
  }
  checks.expect(totals == kModifyOrderTotals, "nested totals " + joined(totals, ","));
  checks.expect(sum == 44, "nested sum " + str(sum));
  checks.expect(node9 == 57, "node 9 total " + str(node9));
  detail = "nested totals " + joined(totals, ",") + " = " + str(sum) + ", node 9 total " + str(node9);
  return checks;
}

Checks ac3(std::string& detail) {
  Checks checks;
  Json report = analyze_json("student_enrolment.model", checks);
  if (!checks.ok()) return checks;
  const Json& w = report.at("weights");
  check_rows(w.at("rows"), kEnrolment, checks);
  checks.expect(w.at("s_max").get<long>() == 6, "s_max " + str(w.at("s_max").get<long>()));
  const WeightTable& t = tcprio::testing::enrolment().weights;
  check_pins(t, {"5:B", "6:B", "7:A"}, checks);
  const NodeWeight& n7 = t.at(NodeId("7"));
  checks.expect(n7.stackWeight == 7, "A(7) " + str(n7.stackWeight));
  // Contributions of every other node are single pushes of s_max - depth.
  const std::map<std::string, std::vector<long>> pushes = {
      {"1", {6}}, {"2", {5}}, {"3", {4}}, {"4", {3}}, {"5", {2}}, {"6", {2}}};
  for (const auto& [id, expected] : pushes) {
    const std::vector<long> got = contributions(t.at(NodeId(id)));
    checks.expect(got == expected, "pushes of " + id + ": " + joined(got, "+"));
  }
  detail = "7 rows, s_max " + str(w.at("s_max").get<long>()) + ", A(7)=" + str(n7.stackWeight) +
           " pinned (traversal pushes " + joined(contributions(n7), "+") + "=" +
           str(n7.computedStackWeight) + ")";
  return checks;
}

Checks ac4(std::string& detail) {
  Checks checks;
  const std::vector<std::pair<std::string, long>> shipping_points = {
      {"0000", 173}, {"0011", 226}, {"1100", 240}, {"1111", 245}, {"0111", 317}, {"1011", 154}};
  const std::vector<std::pair<std::string, long>> enrolment_points = {
      {"00011000", 26}, {"01001000", 20}, {"00000100", 40}};
  for (const auto& [bits, expected] : shipping_points) {
    const long f = tcprio::testing::shipping().fitness_of(bits);
    checks.expect(f == expected, "shipping " + bits + " = " + str(f));
  }
  for (const auto& [bits, expected] : enrolment_points) {
    const long f = tcprio::testing::enrolment().fitness_of(bits);
    checks.expect(f == expected, "enrolment " + bits + " = " + str(f));
  }
  const ScenarioPath winner = tcprio::testing::enrolment().decode("00000101");
  checks.expect(winner.edgeLabels == std::vector<std::string>{"e1", "e2", "e5", "e10"},
                "00000101 does not decode to e1,e2,e5,e10");
  detail = str(static_cast<long>(shipping_points.size() + enrolment_points.size())) +
           " fitness points; 00000101 -> " + join_path(winner.nodes, "-") + " fitness " +
           str(winner.fitness);
  return checks;
}

struct SweepResult {
  std::size_t found = 0;
  long maximum = 0;
};

SweepResult sweep(const Pipeline& p, const OracleResult& o) {
  SweepResult out;
  out.maximum = o.maximum();
  for (std::uint64_t seed = 0; seed < kSweepSeeds; ++seed) {
    GaConfig cfg;
    cfg.seed = seed;
    cfg.maxIterations = kSweepIterations;
    if (run(p.graph, p.weights, p.layout, cfg).bestFitness == out.maximum) ++out.found;
  }
  return out;
}

Checks ac5(std::string& detail) {
  Checks checks;
  const Pipeline& ship = tcprio::testing::shipping();
  const Pipeline& enrol = tcprio::testing::enrolment();
  const auto start = std::chrono::steady_clock::now();
  const OracleResult os = enumerate_all(ship.graph, ship.weights, ship.layout);
  const OracleResult oe = enumerate_all(enrol.graph, enrol.weights, enrol.layout);

  const std::vector<Chromosome> ship_best = os.argmax();
  checks.expect(os.totalChromosomes == 16, "shipping space " + str(os.totalChromosomes));
  checks.expect(ship_best == std::vector<Chromosome>{Chromosome("0111")} && os.maximum() == 317,
                "shipping argmax " + ship_best.front().str() + " / " + str(os.maximum()));
  const std::vector<Chromosome> enrol_best = oe.argmax();
  checks.expect(std::find(enrol_best.begin(), enrol_best.end(), Chromosome("00000101")) !=
                    enrol_best.end(),
                "enrolment argmax class lacks 00000101");

  const SweepResult s = sweep(ship, os);
  const SweepResult e = sweep(enrol, oe);
  const double elapsed = seconds_since(start);
  checks.expect(s.found >= kSweepRequired,
                "shipping GA " + str(s.found) + "/" + str(kSweepSeeds) + " seeds");
  checks.expect(e.found >= kSweepRequired,
                "enrolment GA " + str(e.found) + "/" + str(kSweepSeeds) + " seeds");
  checks.expect(elapsed < kSweepLimit, "sweep took " + fmt_seconds(elapsed));
  detail = "argmax 0111/" + str(os.maximum()) + ", enrolment class of " +
           str(static_cast<long>(enrol_best.size())) + " at " + str(oe.maximum()) +
           "; GA optimum found shipping " + str(s.found) + "/" + str(kSweepSeeds) +
           ", enrolment " + str(e.found) + "/" + str(kSweepSeeds) + " (need " +
           str(kSweepRequired) + "), " + fmt_seconds(elapsed);
  return checks;
}

Checks ac6(std::string& detail) {
  Checks checks;
  const std::vector<BranchCombination> combos =
      declared_branch_combinations(tcprio::testing::enrolment().layout);
  std::set<std::vector<std::string>> got;
  for (const BranchCombination& c : combos) got.insert(c.labels);
  checks.expect(combos.size() == 32, "combinations " + str(static_cast<long>(combos.size())));
  checks.expect(got == kDeclaredCombinations, "combination set differs");
  detail = str(static_cast<long>(got.size())) + " distinct event combinations";
  return checks;
}

bool same_trace(const GaRunResult& a, const GaRunResult& b) {
  if (a.trace.size() != b.trace.size()) return false;
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    const GaTraceRow& x = a.trace[i];
    const GaTraceRow& y = b.trace[i];
    if (x.x != y.x || x.r != y.r || x.cut != y.cut || x.c != y.c || x.mutationR != y.mutationR ||
        x.flippedBit != y.flippedBit || x.m != y.m || x.fPrime != y.fPrime) {
      return false;
    }
  }
  return a.bestChromosome == b.bestChromosome && a.bestFitness == b.bestFitness;
}

Checks ac7(std::string& detail) {
  Checks checks;
  const std::vector<const Pipeline*> fixtures = {&tcprio::testing::shipping(),
                                                 &tcprio::testing::enrolment()};
  std::size_t determinism = 0;
  std::size_t monotone = 0;
  std::size_t partitions = 0;
  std::size_t mutations = 0;
  for (const Pipeline* p : fixtures) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      GaConfig cfg;
      cfg.seed = seed;
      cfg.maxIterations = 30;
      const GaRunResult a = run(p->graph, p->weights, p->layout, cfg);
      const GaRunResult b = run(p->graph, p->weights, p->layout, cfg);
      checks.expect(same_trace(a, b), "trace differs for seed " + std::to_string(seed));
      ++determinism;

      checks.expect(std::is_sorted(a.bestHistory.begin(), a.bestHistory.end()),
                    "best fitness decreased, seed " + std::to_string(seed));
      ++monotone;

      for (std::size_t i = 0; i + 1 < a.trace.size(); i += 2) {
        const GaTraceRow& x = a.trace[i];
        const GaTraceRow& y = a.trace[i + 1];
        const std::size_t cut = x.cut.value_or(x.x.size());
        bool ok = true;
        for (std::size_t k = 0; k < x.x.size(); ++k) {
          ok = ok && x.c.bit(k) == (k < cut ? x.x : y.x).bit(k) &&
               y.c.bit(k) == (k < cut ? y.x : x.x).bit(k);
        }
        checks.expect(ok, "crossover mixes bits, seed " + std::to_string(seed));
        ++partitions;
      }
      for (const GaTraceRow& row : a.trace) {
        int distance = 0;
        for (std::size_t k = 0; k < row.c.size(); ++k) distance += row.c.bit(k) != row.m.bit(k);
        checks.expect(distance == (row.flippedBit ? 1 : 0), "mutation distance " + str(distance));
        ++mutations;
      }
    }
  }

  std::size_t bounded = 0;
  for (int seed = 0; seed < kSyntheticGraphs; ++seed) {
    const Pipeline p = synthetic(seed, seed % 2 == 1);
    const std::size_t decisions = p.graph.decision_nodes().size();
    checks.expect(decisions >= 1 && decisions <= 10,
                  "synthetic " + std::to_string(seed) + " has " + str(static_cast<long>(decisions)) +
                      " decision nodes");
    const OracleResult o = enumerate_all(p.graph, p.weights, p.layout);
    GaConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(seed);
    const GaRunResult r = run(p.graph, p.weights, p.layout, cfg);
    checks.expect(r.bestFitness <= o.maximum(), "synthetic " + std::to_string(seed) +
                                                    " GA best above the enumerated maximum");
    ++bounded;
  }

  std::size_t decoded = 0;
  for (const Pipeline* p : fixtures) {
    const std::size_t bits = p->layout.total_bits();
    const PathDecoder decoder(p->graph, p->layout);
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << bits); ++v) {
      const ScenarioPath path = decoder.decode(Chromosome::from_value(v, bits));
      const std::set<NodeId> unique(path.nodes.begin(), path.nodes.end());
      checks.expect(unique.size() == path.nodes.size(),
                    "repeated node in " + Chromosome::from_value(v, bits).str());
      ++decoded;
    }
  }

  std::size_t round_trips = 0;
  for (int seed = 0; seed < kSyntheticGraphs; ++seed) {
    tcprio::testing::SyntheticSpec spec;
    spec.seed = static_cast<std::uint64_t>(seed);
    spec.statechart = seed % 3 == 0;
    const ModelBundle b = parse_model(tcprio::testing::synthetic_model_text(spec));
    const std::string text = serialize_model(b);
    checks.expect(parse_model(text) == b && serialize_model(parse_model(text)) == text &&
                      parse_model_json(serialize_model_json(b)) == b,
                  "round trip changes synthetic " + std::to_string(seed));
    ++round_trips;
  }
  for (const char* file : {"shipping_order.model", "student_enrolment.model"}) {
    const ModelBundle b = load_model_file(tcprio::testing::fixture_path(file));
    checks.expect(parse_model(serialize_model(b)) == b, std::string("round trip changes ") + file);
    ++round_trips;
  }

  detail = "determinism " + str(static_cast<long>(determinism)) + " runs, elitism " +
           str(static_cast<long>(monotone)) + " runs, GA<=oracle " +
           str(static_cast<long>(bounded)) + " synthetic graphs, crossover " +
           str(static_cast<long>(partitions)) + " pairs, mutation " +
           str(static_cast<long>(mutations)) + " rows, loop-once " +
           str(static_cast<long>(decoded)) + " chromosomes, round trip " +
           str(static_cast<long>(round_trips)) + " models";
  return checks;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Checks(std::string&)>>> criteria = {
      {"AC1 shipping weight table", ac1}, {"AC2 nested aggregation", ac2},
      {"AC3 state chart weight table", ac3}, {"AC4 fitness points", ac4},
      {"AC5 optimum identification", ac5}, {"AC6 declared event combinations", ac6},
      {"AC7 property suite", ac7},
  };
  int failed = 0;
  for (const auto& [name, body] : criteria) {
    std::string detail;
    Checks checks;
    try {
      checks = body(detail);
    } catch (const std::exception& e) {
      checks.expect(false, std::string("exception: ") + e.what());
    }
    std::printf("%s %s: %s\n", checks.ok() ? "PASS" : "FAIL", name, detail.c_str());
    for (const std::string& f : checks.failures()) std::printf("    %s\n", f.c_str());
    failed += checks.ok() ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
