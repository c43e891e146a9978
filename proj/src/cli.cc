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

#include "tcprio/cli.h"

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tcprio/complexity.h"
#include "tcprio/encoding.h"
#include "tcprio/ga.h"
#include "tcprio/graph.h"
#include "tcprio/model.h"
#include "tcprio/oracle.h"
#include "tcprio/report.h"

namespace tcprio::cli {
namespace {

struct Options {
  std::string model;
  std::string name;
  std::string format = "text";
  std::string dotPath;
  std::uint64_t seed = 1;
  std::size_t pop = 4;
  std::size_t iters = 12;
  double pc = 0.8;
  double pm = 0.2;
  std::string initial;
  bool noElitism = false;
  std::size_t sweep = 0;
  double minRate = 0.95;
  std::string oracleCsv;
};

class Failure {
 public:
  Failure(int code, std::string message) : code_(code), message_(std::move(message)) {}
  int code() const { return code_; }
  const std::string& message() const { return message_; }

 private:
  int code_;
  std::string message_;
};

struct Loaded {
  ModelBundle bundle;
  DiagramModel model;
  FlowGraph graph;
};

void validate_reachable(const DiagramModel& root, const ModelBundle& bundle, std::ostream& err) {
  std::set<std::string> seen;
  std::vector<const DiagramModel*> todo{&root};
  bool failed = false;
  while (!todo.empty()) {
    const DiagramModel* m = todo.back();
    todo.pop_back();
    if (!seen.insert(m->name).second) continue;
    for (const Finding& f : validate_model(*m, bundle)) {
      err << (f.severity == Severity::Error ? "error" : "warning") << ": " << m->name;
      if (!f.location.empty()) err << ' ' << f.location;
      err << ": " << f.message << '\n';
      failed |= f.severity == Severity::Error;
    }
    for (const auto& [host, sub] : m->subActivities) {
      if (const DiagramModel* s = find_model(bundle, sub)) todo.push_back(s);
    }
  }
  if (failed) throw Failure(kModelError, "model '" + root.name + "' is invalid");
}

Loaded load(const Options& o, std::ostream& err) {
  Loaded l;
  try {
    l.bundle = load_model_file(o.model);
  } catch (const ParseError& e) {
    throw Failure(kModelError, o.model + ": " + e.what());
  } catch (const std::exception& e) {
    throw Failure(kModelError, e.what());
  }
  if (l.bundle.empty()) throw Failure(kModelError, o.model + ": no models");
  const DiagramModel* chosen = o.name.empty() ? &l.bundle.front() : find_model(l.bundle, o.name);
  if (!chosen) throw Failure(kModelError, "no model named '" + o.name + "' in " + o.model);
  l.model = *chosen;
  validate_reachable(l.model, l.bundle, err);
  try {
    l.graph = build_flow_graph(resolve_nested(l.model, l.bundle));
  } catch (const std::exception& e) {
    throw Failure(kModelError, e.what());
  }
  if (!o.dotPath.empty()) {
    std::ofstream dot(o.dotPath);
    if (!dot) throw Failure(kUsage, "cannot write " + o.dotPath);
    dot << l.graph.to_dot();
  }
  return l;
}

GaConfig ga_config(const Options& o) {
  GaConfig cfg;
  cfg.populationSize = o.pop;
  cfg.crossoverProb = o.pc;
  cfg.mutationProb = o.pm;
  cfg.maxIterations = o.iters;
  cfg.seed = o.seed;
  cfg.elitism = !o.noElitism;
  if (!o.initial.empty()) {
    std::stringstream ss(o.initial);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        cfg.initialPopulation.emplace_back(item);
      } catch (const std::invalid_argument& e) {
        throw Failure(kUsage, std::string("--initial: ") + e.what());
      }
    }
  }
  return cfg;
}

// Emits the single decision-free scenario and signals the degenerate case.
[[noreturn]] void degenerate(const Loaded& l, const WeightTable& weights, ReportFormat format,
                             std::ostream& out) {
  RunReport r;
  r.modelName = l.model.name;
  r.modelKind = l.model.kind;
  r.weights = weights;
  r.layout = "0 fields";
  ScenarioPath p = evaluate(l.graph, weights, ChromosomeLayout{}, Chromosome{});
  r.scenarios.push_back({p, Chromosome{}, false, 0});
  r.notices.push_back(l.model.name + " has no decision nodes; the only scenario is reported");
  out << render_run(r, format);
  throw Failure(kNoDecisionNodes, l.model.name + " has no decision nodes");
}

int analyze(const Options& o, std::ostream& out, std::ostream& err) {
  ReportFormat format = parse_report_format(o.format);
  Loaded l = load(o, err);
  out << render_weights(total_complexity(l.graph), l.model.kind, format);
  return kOk;
}

int prioritize(const Options& o, std::ostream& out, std::ostream& err) {
  ReportFormat format = parse_report_format(o.format);
  Loaded l = load(o, err);
  WeightTable weights = total_complexity(l.graph);
  if (l.graph.decision_nodes().empty()) degenerate(l, weights, format, out);
  ChromosomeLayout layout = make_layout(l.graph);
  GaConfig cfg = ga_config(o);
  try {
    validate(cfg, layout);
  } catch (const std::invalid_argument& e) {
    throw Failure(kUsage, e.what());
  }
  GaRunResult result = run(l.graph, weights, layout, cfg);
  out << render_run(make_run_report(l.model, weights, layout, cfg, result), format);
  return kOk;
}

int verify(const Options& o, std::ostream& out, std::ostream& err) {
  ReportFormat format = parse_report_format(o.format);
  Loaded l = load(o, err);
  WeightTable weights = total_complexity(l.graph);
  if (l.graph.decision_nodes().empty()) degenerate(l, weights, format, out);
  ChromosomeLayout layout = make_layout(l.graph);

  OracleResult oracle;
  try {
    oracle = enumerate_all(l.graph, weights, layout);
  } catch (const SearchSpaceTooLarge& e) {
    throw Failure(kOracleBound, e.what());
  }
  if (!o.oracleCsv.empty()) {
    std::ofstream csv(o.oracleCsv);
    if (!csv) throw Failure(kUsage, "cannot write " + o.oracleCsv);
    csv << oracle_csv(oracle);
  }

  GaConfig cfg = ga_config(o);
  cfg.targetPathCount = oracle.distinctPaths.size();
  try {
    validate(cfg, layout);
  } catch (const std::invalid_argument& e) {
    throw Failure(kUsage, e.what());
  }
  GaRunResult result = run(l.graph, weights, layout, cfg);
  RunReport report = make_run_report(l.model, weights, layout, cfg, result);
  report.verification = verify_run(result, oracle);

  bool passed = report.verification->optimumFound;
  if (o.sweep > 0) {
    SweepSummary s;
    s.firstSeed = o.seed;
    s.runs = o.sweep;
    s.minRate = o.minRate;
    for (std::size_t i = 0; i < o.sweep; ++i) {
      GaConfig c = cfg;
      c.seed = o.seed + i;
      VerificationReport v = verify_run(run(l.graph, weights, layout, c), oracle);
      s.optimumFound += v.optimumFound ? 1 : 0;
      s.worstGap = std::max(s.worstGap, v.gap);
    }
    passed = s.passed();
    report.sweep = s;
  }
  out << render_run(report, format);
  return passed ? kOk : kVerificationFailed;
}

void add_model_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--model", o.model, "Model file (.model text or .json)")->required();
  cmd->add_option("--name", o.name, "Model to use when the file holds several (default: first)");
  cmd->add_option("--format", o.format, "Report format")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  cmd->add_option("--export-dot", o.dotPath, "Write the flow graph as Graphviz to this path");
}

void add_ga_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--seed", o.seed, "Random seed");
  cmd->add_option("--pop", o.pop, "Population size (even, >= 2)");
  cmd->add_option("--iters", o.iters, "Maximum iterations");
  cmd->add_option("--pc", o.pc, "Crossover probability")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--pm", o.pm, "Mutation probability")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--initial", o.initial, "Comma-separated initial chromosomes");
  cmd->add_flag("--no-elitism", o.noElitism, "Do not carry the best individual over");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Scenario prioritization for activity and statechart models"};
  app.name("tcprio");
  app.require_subcommand(1);

  CLI::App* analyze_cmd = app.add_subcommand("analyze", "Print the node complexity table");
  add_model_options(analyze_cmd, o);

  CLI::App* prioritize_cmd = app.add_subcommand("prioritize", "Rank scenarios with the GA");
  add_model_options(prioritize_cmd, o);
  add_ga_options(prioritize_cmd, o);

  CLI::App* verify_cmd = app.add_subcommand("verify", "Check the GA against full enumeration");
  add_model_options(verify_cmd, o);
  add_ga_options(verify_cmd, o);
  verify_cmd->add_option("--sweep", o.sweep, "Also run this many seeds starting at --seed");
  verify_cmd->add_option("--min-rate", o.minRate, "Required optimum-found rate for --sweep")
      ->check(CLI::Range(0.0, 1.0));
  verify_cmd->add_option("--oracle-csv", o.oracleCsv, "Write the full enumeration as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help requests exit 0; anything else is a usage error.
    int code = app.exit(e, out, err);
    if (code == 0) return kOk;
    return kUsage;
  }

  try {
    if (analyze_cmd->parsed()) return analyze(o, out, err);
    if (prioritize_cmd->parsed()) return prioritize(o, out, err);
    return verify(o, out, err);
  } catch (const Failure& f) {
    err << "tcprio: " << f.message() << '\n';
    return f.code();
  } catch (const std::exception& e) {
    err << "tcprio: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace tcprio::cli
