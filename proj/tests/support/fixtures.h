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

#ifndef TCPRIO_TESTS_SUPPORT_FIXTURES_H_
#define TCPRIO_TESTS_SUPPORT_FIXTURES_H_

#include <filesystem>
#include <string>

#include "tcprio/complexity.h"
#include "tcprio/encoding.h"
#include "tcprio/graph.h"
#include "tcprio/model.h"

namespace tcprio::testing {

inline std::filesystem::path fixture_path(const std::string& file) {
  return std::filesystem::path(TCPRIO_FIXTURE_DIR) / file;
}

// Everything derived from one model of a bundle.
struct Pipeline {
  ModelBundle bundle;
  DiagramModel model;
  FlowGraph graph;
  WeightTable weights;
  ChromosomeLayout layout;

  long fitness_of(const std::string& bits) const {
    return fitness(graph, weights, layout, Chromosome(bits));
  }
  ScenarioPath decode(const std::string& bits) const {
    return evaluate(graph, weights, layout, Chromosome(bits));
  }
};

inline Pipeline make_pipeline(ModelBundle bundle, const std::string& name = {}) {
  Pipeline p;
  p.bundle = std::move(bundle);
  p.model = name.empty() ? p.bundle.front() : *find_model(p.bundle, name);
  p.graph = build_flow_graph(resolve_nested(p.model, p.bundle));
  p.weights = total_complexity(p.graph);
  if (!p.graph.decision_nodes().empty()) p.layout = make_layout(p.graph);
  return p;
}

inline Pipeline load_pipeline(const std::string& file, const std::string& name = {}) {
  return make_pipeline(load_model_file(fixture_path(file)), name);
}

inline const Pipeline& shipping() {
  static const Pipeline p = load_pipeline("shipping_order.model");
  return p;
}

inline const Pipeline& enrolment() {
  static const Pipeline p = load_pipeline("student_enrolment.model");
  return p;
}

}  // namespace tcprio::testing

#endif  // TCPRIO_TESTS_SUPPORT_FIXTURES_H_
