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

#include <map>
#include <set>

#include <doctest.h>

#include "fixtures.h"
#include "reference_walk.h"
#include "tcprio/oracle.h"

using namespace tcprio;
using tcprio::testing::enrolment;
using tcprio::testing::Pipeline;
using tcprio::testing::ReferenceWalker;
using tcprio::testing::shipping;

namespace {

// Reference totals, frozen.
const std::map<std::string, long> kShippingTotals = {
    {"1", 18},  {"2", 18},  {"3", 17},  {"4", 17},  {"5", 15},  {"6", 15},
    {"7", 15},  {"8", 15},  {"9", 57},  {"10", 14}, {"11", 12}, {"12", 12},
    {"13", 19}, {"14", 10}, {"15", 10}, {"16", 9},  {"17", 8},  {"18", 6},
    {"19", 5},  {"20", 5},  {"21", 32}, {"22", 22},
};
const std::map<std::string, long> kEnrolmentTotals = {
    {"1", 6}, {"2", 7}, {"3", 6}, {"4", 9}, {"5", 4}, {"6", 5}, {"7", 7},
};

OracleResult enumerate(const Pipeline& p) { return enumerate_all(p.graph, p.weights, p.layout); }

void check_against_reference(const Pipeline& p, const std::map<std::string, long>& totals) {
  ReferenceWalker ref(p.model);
  REQUIRE(ref.bits() == p.layout.total_bits());
  OracleResult o = enumerate(p);
  REQUIRE(o.entries.size() == (std::size_t{1} << ref.bits()));
  long best = 0;
  std::set<std::vector<std::string>> distinct;
  for (const OracleEntry& e : o.entries) {
    ReferenceWalker::Walk w = ref.walk(e.chromosome.str());
    long f = 0;
    for (const std::string& n : w.nodes) f += totals.at(n);
    CAPTURE(e.chromosome.str());
    CHECK(join_path(e.path.nodes, "-") == [&] {
      std::string s;
      for (const std::string& n : w.nodes) s += (s.empty() ? "" : "-") + n;
      return s;
    }());
    CHECK(e.path.edgeLabels == w.labels);
    CHECK(e.path.fitness == f);
    best = std::max(best, f);
    distinct.insert(w.nodes);
  }
  CHECK(o.maximum() == best);
  CHECK(o.distinctPaths.size() == distinct.size());
}

}  // namespace

TEST_CASE("shipping enumeration matches the reference walk") {
  check_against_reference(shipping(), kShippingTotals);
  OracleResult o = enumerate(shipping());
  CHECK(o.totalChromosomes == 16);
  CHECK(o.entries.front().chromosome.str() == "0111");
  CHECK(o.maximum() == 317);
  CHECK(o.argmax().size() == 1);
  CHECK(o.entries.back().path.fitness == 154);
  CHECK(o.find(Chromosome("1011"))->path.fitness == 154);
}

TEST_CASE("enrolment enumeration matches the reference walk") {
  check_against_reference(enrolment(), kEnrolmentTotals);
  OracleResult o = enumerate(enrolment());
  CHECK(o.totalChromosomes == 256);
  CHECK(o.maximum() == 44);
  std::vector<Chromosome> best = o.argmax();
  CHECK(best.size() == 8);
  CHECK(std::find(best.begin(), best.end(), Chromosome("00000101")) != best.end());
  for (const Chromosome& c : best) {
    CHECK(o.find(c)->path.edgeLabels == std::vector<std::string>{"e1", "e2", "e5", "e10"});
  }
}

TEST_CASE("ordering and deduplication") {
  OracleResult o = enumerate(enrolment());
  for (std::size_t i = 1; i < o.entries.size(); ++i) {
    const OracleEntry& a = o.entries[i - 1];
    const OracleEntry& b = o.entries[i];
    CHECK(a.path.fitness >= b.path.fitness);
    if (a.path.fitness == b.path.fitness) CHECK(a.chromosome < b.chromosome);
  }
  std::size_t members = 0;
  for (const DistinctPath& d : o.distinctPaths) members += d.chromosomes.size();
  CHECK(members == 256);

  OracleResult s = enumerate(shipping());
  auto family = std::find_if(s.distinctPaths.begin(), s.distinctPaths.end(),
                             [](const DistinctPath& d) { return d.path.fitness == 173; });
  REQUIRE(family != s.distinctPaths.end());
  CHECK(family->chromosomes ==
        std::vector<Chromosome>{Chromosome("0000"), Chromosome("0001"), Chromosome("0100"),
                                Chromosome("0101")});
  CHECK(s.distinctPaths.size() == 7);
}

TEST_CASE("aliased flags") {
  OracleResult o = enumerate(enrolment());
  std::size_t aliased = 0;
  for (const OracleEntry& e : o.entries) aliased += e.aliased ? 1 : 0;
  CHECK(aliased == 256 - 32);
  CHECK_FALSE(o.find(Chromosome("00000101"))->aliased);
  CHECK(o.find(Chromosome("10000101"))->aliased);
}

TEST_CASE("one decision, one bit") {
  ModelBundle b = parse_model(R"(
model activity One
  node 1 initial
  node 2 decision
  node 3 final
  node 4 final
  edge 1 -> 2
  edge 2 -> 3 on no
  edge 2 -> 4 on yes
end
)");
  Pipeline p = tcprio::testing::make_pipeline(b);
  CHECK(enumerate(p).entries.size() == 2);
}

TEST_CASE("enumeration bound") {
  CHECK_THROWS_AS(enumerate_all(shipping().graph, shipping().weights, shipping().layout, 3),
                  SearchSpaceTooLarge);

  std::string text = "model activity Wide\n  node 1 initial\n";
  for (int i = 2; i <= 26; ++i) text += "  node " + std::to_string(i) + " decision\n";
  text += "  node 27 final\n  edge 1 -> 2\n";
  for (int i = 2; i <= 26; ++i) {
    text += "  edge " + std::to_string(i) + " -> " + std::to_string(i + 1) + " on a\n";
    text += "  edge " + std::to_string(i) + " -> " + (i == 26 ? "2" : "27") + " on b\n";
  }
  text += "end\n";
  Pipeline wide = tcprio::testing::make_pipeline(parse_model(text));
  CHECK(wide.layout.total_bits() == 25);
  try {
    enumerate(wide);
    FAIL("expected SearchSpaceTooLarge");
  } catch (const SearchSpaceTooLarge& e) {
    CHECK(e.bits() == 25);
  }
}

TEST_CASE("verify_run") {
  OracleResult o = enumerate(shipping());
  GaConfig cfg;
  cfg.maxIterations = 50;
  cfg.initialPopulation = {Chromosome("0011"), Chromosome("0001"), Chromosome("1100"),
                           Chromosome("1111")};
  GaRunResult converged = run(shipping().graph, shipping().weights, shipping().layout, cfg);
  VerificationReport v = verify_run(converged, o);
  CHECK(v.optimumFound);
  CHECK(v.gap == 0);
  CHECK(v.pathsTotal == 7);
  CHECK(v.coverage > 0.0);
  CHECK(v.coverage <= 1.0);

  GaConfig stuck;
  stuck.maxIterations = 0;
  stuck.initialPopulation = {Chromosome("1011"), Chromosome("1011"), Chromosome("1011"),
                             Chromosome("1011")};
  VerificationReport w =
      verify_run(run(shipping().graph, shipping().weights, shipping().layout, stuck), o);
  CHECK_FALSE(w.optimumFound);
  CHECK(w.gap == 317 - 154);
  CHECK(w.pathsCovered == 1);

  GaRunResult forged = converged;
  forged.bestFitness = 400;
  CHECK_THROWS_AS(verify_run(forged, o), LayoutMismatchError);
  CHECK_THROWS_AS(verify_run(converged, enumerate(enrolment())), LayoutMismatchError);
}

TEST_CASE("declared event combinations") {
  // Rows of the reference test-case table, one event per decision state.
  const std::set<std::vector<std::string>> expected = {
      {"e1", "e2", "e4", "e7"},    {"e1", "e2", "e4", "e10"},   {"e1", "e2", "e5", "e7"},
      {"e1", "e2", "e5", "e10"},   {"e1", "e2", "e11", "e7"},   {"e1", "e2", "e11", "e10"},
      {"e1", "e9", "e4", "e7"},    {"e1", "e9", "e4", "e10"},   {"e1", "e9", "e5", "e7"},
      {"e1", "e9", "e5", "e10"},   {"e1", "e9", "e11", "e7"},   {"e1", "e9", "e11", "e10"},
      {"e12", "e2", "e4", "e7"},   {"e12", "e2", "e4", "e10"},  {"e12", "e2", "e5", "e7"},
      {"e12", "e2", "e5", "e10"},  {"e12", "e2", "e11", "e7"},  {"e12", "e2", "e11", "e10"},
      {"e12", "e9", "e4", "e7"},   {"e12", "e9", "e4", "e10"},  {"e12", "e9", "e5", "e7"},
      {"e12", "e9", "e5", "e10"},  {"e12", "e9", "e11", "e7"},  {"e12", "e9", "e11", "e10"},
      {"e1", "e2", "e3", "e7"},    {"e1", "e2", "e3", "e10"},   {"e1", "e9", "e3", "e7"},
      {"e1", "e9", "e3", "e10"},   {"e12", "e2", "e3", "e7"},   {"e12", "e2", "e3", "e10"},
      {"e12", "e9", "e3", "e7"},   {"e12", "e9", "e3", "e10"},
  };
  std::vector<BranchCombination> combos = declared_branch_combinations(enrolment().layout);
  CHECK(combos.size() == 32);
  std::set<std::vector<std::string>> got;
  for (const BranchCombination& c : combos) {
    got.insert(c.labels);
    CHECK_FALSE(enrolment().layout.is_aliased(c.chromosome));
  }
  CHECK(got == expected);
  CHECK(combos[1].chromosome.str() == "00000001");
  CHECK(combos[1].labels == std::vector<std::string>{"e1", "e2", "e11", "e10"});

  CHECK(declared_branch_combinations(shipping().layout).size() == 16);
}
