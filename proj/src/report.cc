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

#include "tcprio/report.h"

#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace tcprio {

using Json = nlohmann::ordered_json;

ReportFormat parse_report_format(std::string_view s) {
  if (s == "text") return ReportFormat::Text;
  if (s == "json") return ReportFormat::Json;
  if (s == "csv") return ReportFormat::Csv;
  throw std::invalid_argument("unknown report format '" + std::string(s) + "'");
}

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string pushes(const NodeWeight& w, char sep = '+') {
  std::string out;
  for (const StackPush& p : w.pushLog) {
    if (!out.empty()) out += sep;
    out += std::to_string(p.contribution);
  }
  return out.empty() ? "0" : out;
}

std::vector<std::string> node_strings(const std::vector<NodeId>& nodes) {
  std::vector<std::string> out;
  for (const NodeId& n : nodes) out.push_back(n.str());
  return out;
}

Json weights_json(const WeightTable& t) {
  Json rows = Json::array();
  Json nested = Json::object();
  for (const NodeWeight& w : t.rows()) {
    Json pushes_json = Json::array();
    for (const StackPush& p : w.pushLog) {
      pushes_json.push_back({{"depth", p.depth}, {"stack_size", p.stackSize},
                             {"contribution", p.contribution}});
    }
    Json row = {{"node", w.node.str()},
                {"A", w.stackWeight},
                {"B", w.ifComplexity},
                {"nested", w.nestedComplexity},
                {"total", w.total},
                {"pushes", pushes_json}};
    if (w.stackPinned || w.ifPinned) {
      row["pinned"] = {{"A", w.stackPinned},
                       {"B", w.ifPinned},
                       {"computed_A", w.computedStackWeight},
                       {"computed_B", w.computedIfComplexity},
                       {"note", w.pinNote}};
    }
    rows.push_back(std::move(row));
    if (w.nested) nested[w.node.str()] = weights_json(*w.nested);
  }
  Json out = {{"graph", t.graph_name()},
              {"s_max", t.max_stack_size()},
              {"rows", rows},
              {"grand_total", t.grand_total()}};
  if (!nested.empty()) out["nested"] = nested;
  return out;
}

void weights_text(std::ostream& os, const WeightTable& t, const std::string& title) {
  os << title << "  s_max " << t.max_stack_size() << '\n';
  os << std::right << std::setw(6) << "node" << std::setw(6) << "A" << std::setw(6) << "B"
     << std::setw(8) << "nested" << std::setw(7) << "total" << "  pushes\n";
  std::vector<const NodeWeight*> pinned;
  for (const NodeWeight& w : t.rows()) {
    os << std::setw(6) << w.node.str() << std::setw(5) << w.stackWeight
       << (w.stackPinned ? '*' : ' ') << std::setw(5) << w.ifComplexity
       << (w.ifPinned ? '*' : ' ') << std::setw(8) << w.nestedComplexity << std::setw(7)
       << w.total << "  " << pushes(w) << '\n';
    if (w.stackPinned || w.ifPinned) pinned.push_back(&w);
  }
  os << "grand total " << t.grand_total() << '\n';
  for (const NodeWeight* w : pinned) {
    os << "* node " << w->node << ':';
    if (w->stackPinned) os << " A computed " << w->computedStackWeight;
    if (w->ifPinned) os << " B computed " << w->computedIfComplexity;
    if (!w->pinNote.empty()) os << " (" << w->pinNote << ')';
    os << '\n';
  }
  for (const NodeWeight& w : t.rows()) {
    if (w.nested) {
      os << '\n';
      weights_text(os, *w.nested, "nested in " + w.node.str() + ": " + w.nested->graph_name());
    }
  }
}

void weights_sections(std::ostream& os, const WeightTable& t, const std::string& prefix) {
  os << "# weights " << prefix << t.graph_name() << " s_max=" << t.max_stack_size() << '\n'
     << weights_csv(t);
  for (const NodeWeight& w : t.rows()) {
    if (w.nested) weights_sections(os, *w.nested, prefix + w.node.str() + "/");
  }
}

std::string config_line(const GaConfig& c, std::size_t iterationsRun) {
  std::ostringstream os;
  os << "pop " << c.populationSize << " pc " << fixed(c.crossoverProb, 3) << " pm "
     << fixed(c.mutationProb, 3) << " iterations " << iterationsRun << '/' << c.maxIterations
     << " seed " << c.seed << " elitism " << (c.elitism ? "on" : "off");
  return os.str();
}

Json verification_json(const VerificationReport& v) {
  return {{"optimum_found", v.optimumFound}, {"ga_best", v.gaBest},
          {"oracle_maximum", v.oracleMaximum}, {"gap", v.gap},
          {"paths_covered", v.pathsCovered}, {"paths_total", v.pathsTotal},
          {"coverage", v.coverage}};
}

Json sweep_json(const SweepSummary& s) {
  return {{"first_seed", s.firstSeed}, {"runs", s.runs}, {"optimum_found", s.optimumFound},
          {"rate", s.rate()}, {"min_rate", s.minRate}, {"worst_gap", s.worstGap},
          {"passed", s.passed()}};
}

}  // namespace

RunReport make_run_report(const DiagramModel& model, const WeightTable& weights,
                          const ChromosomeLayout& layout, const GaConfig& cfg,
                          const GaRunResult& result) {
  RunReport r;
  r.modelName = model.name;
  r.modelKind = model.kind;
  r.weights = weights;
  r.layout = layout.describe();
  r.config = cfg;
  r.iterationsRun = result.iterationsRun;
  for (const CoveredPath& cp : result.coveredPaths) {
    r.scenarios.push_back({cp.path, cp.firstChromosome, layout.is_aliased(cp.firstChromosome),
                           cp.firstIteration});
  }
  std::stable_sort(r.scenarios.begin(), r.scenarios.end(),
                   [](const RankedScenario& a, const RankedScenario& b) {
                     if (a.path.fitness != b.path.fitness) return a.path.fitness > b.path.fitness;
                     return a.chromosome < b.chromosome;
                   });
  // The GA best is the first chromosome to reach the maximum; keep it on top.
  auto best = std::find_if(r.scenarios.begin(), r.scenarios.end(), [&](const RankedScenario& s) {
    return s.path.nodes == result.bestPath.nodes;
  });
  if (best != r.scenarios.end() && best != r.scenarios.begin()) {
    std::rotate(r.scenarios.begin(), best, best + 1);
  }
  r.initialPopulation = result.initialPopulation;
  r.trace = result.trace;
  return r;
}

std::string weights_csv(const WeightTable& t) {
  std::ostringstream os;
  os << "node,A,B,total,push_contributions\n";
  for (const NodeWeight& w : t.rows()) {
    os << csv_field(w.node.str()) << ',' << w.stackWeight << ',' << w.ifComplexity << ','
       << w.total << ',' << pushes(w, ';') << '\n';
  }
  return os.str();
}

std::string trace_csv(const std::vector<GaTraceRow>& trace) {
  std::ostringstream os;
  os << "iteration,X,F(X),r,C,M,F'(X)\n";
  for (const GaTraceRow& row : trace) {
    os << row.iteration << ',' << row.x.str() << ',' << row.fx << ',' << fixed(row.r, 3) << ','
       << row.c.str() << ',' << row.m.str() << ',' << row.fPrime << '\n';
  }
  return os.str();
}

std::string oracle_csv(const OracleResult& oracle) {
  std::ostringstream os;
  os << "chromosome,path,fitness,aliased\n";
  for (const OracleEntry& e : oracle.entries) {
    os << e.chromosome.str() << ',' << join_path(e.path.nodes, "-") << ',' << e.path.fitness
       << ',' << (e.aliased ? 1 : 0) << '\n';
  }
  return os.str();
}

std::string render_weights(const WeightTable& table, ModelKind kind, ReportFormat format) {
  std::ostringstream os;
  switch (format) {
    case ReportFormat::Text:
      weights_text(os, table, table.graph_name() + " (" + std::string(to_string(kind)) + ")");
      break;
    case ReportFormat::Json: {
      Json j = {{"model", table.graph_name()}, {"kind", to_string(kind)}};
      j["weights"] = weights_json(table);
      os << j.dump(2) << '\n';
      break;
    }
    case ReportFormat::Csv:
      weights_sections(os, table, "");
      break;
  }
  return os.str();
}

std::string render_run(const RunReport& r, ReportFormat format) {
  std::ostringstream os;
  if (format == ReportFormat::Json) {
    Json scenarios = Json::array();
    for (std::size_t i = 0; i < r.scenarios.size(); ++i) {
      const RankedScenario& s = r.scenarios[i];
      scenarios.push_back({{"rank", i + 1},
                           {"fitness", s.path.fitness},
                           {"chromosome", s.chromosome.str()},
                           {"aliased", s.aliased},
                           {"complete", s.path.complete},
                           {"path", node_strings(s.path.nodes)},
                           {"labels", s.path.edgeLabels},
                           {"first_iteration", s.firstIteration}});
    }
    Json initial = Json::array();
    for (const Scored& s : r.initialPopulation) {
      initial.push_back({{"X", s.chromosome.str()}, {"F", s.fitness}});
    }
    Json trace = Json::array();
    for (const GaTraceRow& row : r.trace) {
      Json t = {{"iteration", row.iteration}, {"rank", row.rank},     {"X", row.x.str()},
                {"F", row.fx},               {"r", row.r},           {"C", row.c.str()},
                {"M", row.m.str()},          {"F_prime", row.fPrime}};
      t["cut"] = row.cut ? Json(*row.cut) : Json(nullptr);
      t["mutation_r"] = row.mutationR;
      t["flipped_bit"] = row.flippedBit ? Json(*row.flippedBit) : Json(nullptr);
      if (row.elite) t["elite"] = row.survivor.str();
      trace.push_back(std::move(t));
    }
    Json j = {{"model", r.modelName},
              {"kind", to_string(r.modelKind)},
              {"layout", r.layout},
              {"ga",
               {{"population", r.config.populationSize},
                {"crossover_prob", r.config.crossoverProb},
                {"mutation_prob", r.config.mutationProb},
                {"max_iterations", r.config.maxIterations},
                {"iterations_run", r.iterationsRun},
                {"seed", r.config.seed},
                {"elitism", r.config.elitism}}},
              {"weights", weights_json(r.weights)},
              {"scenarios", scenarios},
              {"initial_population", initial},
              {"trace", trace}};
    if (r.verification) j["verification"] = verification_json(*r.verification);
    if (r.sweep) j["sweep"] = sweep_json(*r.sweep);
    if (!r.notices.empty()) j["notices"] = r.notices;
    os << j.dump(2) << '\n';
    return os.str();
  }

  if (format == ReportFormat::Csv) {
    os << "# scenarios\nrank,fitness,chromosome,aliased,complete,path,labels\n";
    for (std::size_t i = 0; i < r.scenarios.size(); ++i) {
      const RankedScenario& s = r.scenarios[i];
      std::string labels;
      for (const std::string& l : s.path.edgeLabels) labels += (labels.empty() ? "" : " ") + l;
      os << i + 1 << ',' << s.path.fitness << ',' << s.chromosome.str() << ','
         << (s.aliased ? 1 : 0) << ',' << (s.path.complete ? 1 : 0) << ','
         << join_path(s.path.nodes, "-") << ',' << csv_field(labels) << '\n';
    }
    os << "# trace\n" << trace_csv(r.trace);
    weights_sections(os, r.weights, "");
    if (r.verification) {
      const VerificationReport& v = *r.verification;
      os << "# verification\noptimum_found,ga_best,oracle_maximum,gap,paths_covered,paths_total,"
            "coverage\n"
         << (v.optimumFound ? 1 : 0) << ',' << v.gaBest << ',' << v.oracleMaximum << ','
         << v.gap << ',' << v.pathsCovered << ',' << v.pathsTotal << ','
         << fixed(v.coverage, 4) << '\n';
    }
    if (r.sweep) {
      const SweepSummary& s = *r.sweep;
      os << "# sweep\nfirst_seed,runs,optimum_found,rate,min_rate,worst_gap,passed\n"
         << s.firstSeed << ',' << s.runs << ',' << s.optimumFound << ',' << fixed(s.rate(), 4)
         << ',' << fixed(s.minRate, 4) << ',' << s.worstGap << ',' << (s.passed() ? 1 : 0)
         << '\n';
    }
    for (const std::string& n : r.notices) os << "# notice " << n << '\n';
    return os.str();
  }

  os << "model " << r.modelName << " (" << to_string(r.modelKind) << ")\n";
  for (const std::string& n : r.notices) os << "notice: " << n << '\n';
  os << "layout " << r.layout << '\n';
  os << "ga " << config_line(r.config, r.iterationsRun) << "\n\n";

  os << "ranked scenarios\n";
  for (std::size_t i = 0; i < r.scenarios.size(); ++i) {
    const RankedScenario& s = r.scenarios[i];
    os << std::setw(4) << i + 1 << std::setw(7) << s.path.fitness << "  " << s.chromosome.str()
       << (s.aliased ? " (aliased)" : "") << "  " << join_path(s.path.nodes, "-");
    if (!s.path.edgeLabels.empty()) {
      os << "  [";
      for (std::size_t k = 0; k < s.path.edgeLabels.size(); ++k) {
        os << (k ? "," : "") << s.path.edgeLabels[k];
      }
      os << ']';
    }
    if (!s.path.complete) os << "  incomplete";
    os << '\n';
  }

  if (!r.initialPopulation.empty()) {
    os << "\ninitial population";
    for (const Scored& s : r.initialPopulation) os << ' ' << s.chromosome.str() << ':' << s.fitness;
    os << '\n';
  }
  if (!r.trace.empty()) {
    os << "\ntrace\n"
       << std::setw(4) << "it" << std::setw(12) << "X" << std::setw(7) << "F(X)" << std::setw(7)
       << "r" << std::setw(12) << "C" << std::setw(12) << "M" << std::setw(7) << "F'(X)" << '\n';
    for (const GaTraceRow& row : r.trace) {
      os << std::setw(4) << row.iteration << std::setw(12) << row.x.str() << std::setw(7)
         << row.fx << std::setw(7) << fixed(row.r, 3) << std::setw(12) << row.c.str()
         << std::setw(12) << row.m.str() << std::setw(7) << row.fPrime;
      if (row.elite) os << "  elite " << row.survivor.str() << " kept";
      os << '\n';
    }
  }

  os << '\n';
  weights_text(os, r.weights, "weights " + r.weights.graph_name());

  if (r.verification) {
    const VerificationReport& v = *r.verification;
    os << "\nverification: optimum " << (v.optimumFound ? "found" : "missed") << ", ga best "
       << v.gaBest << ", maximum " << v.oracleMaximum << ", gap " << v.gap << ", paths covered "
       << v.pathsCovered << '/' << v.pathsTotal << " (" << fixed(100.0 * v.coverage, 1)
       << "%)\n";
  }
  if (r.sweep) {
    const SweepSummary& s = *r.sweep;
    os << "sweep: seeds " << s.firstSeed << ".." << s.firstSeed + s.runs - 1 << ", optimum found "
       << s.optimumFound << '/' << s.runs << " (rate " << fixed(s.rate(), 2) << ", required "
       << fixed(s.minRate, 2) << "), worst gap " << s.worstGap << " -> "
       << (s.passed() ? "pass" : "fail") << '\n';
  }
  return os.str();
}

}  // namespace tcprio
