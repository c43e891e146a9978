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

#ifndef TCPRIO_ENCODING_H_
#define TCPRIO_ENCODING_H_

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tcprio/complexity.h"
#include "tcprio/graph.h"

namespace tcprio {

// Fixed-length 0/1 string. The most significant field belongs to the lowest
// decision-node id. Ordering is by bit value for equal lengths.
class Chromosome {
 public:
  Chromosome() = default;
  // Throws std::invalid_argument unless `bits` is a non-empty 0/1 string.
  explicit Chromosome(std::string bits);
  static Chromosome from_value(std::uint64_t value, std::size_t width);

  std::size_t size() const { return bits_.size(); }
  bool bit(std::size_t i) const { return bits_[i] == '1'; }
  const std::string& str() const { return bits_; }
  // Only valid for sizes up to 64.
  std::uint64_t value() const;
  int popcount() const;

  Chromosome with_flipped(std::size_t i) const;

  friend bool operator==(const Chromosome&, const Chromosome&) = default;
  friend std::strong_ordering operator<=>(const Chromosome& a, const Chromosome& b);

 private:
  std::string bits_;
};

struct LayoutField {
  NodeId node;
  // Outgoing branches in declaration order; code v selects v mod size().
  std::vector<NodeId> targets;
  std::vector<std::string> labels;
};

class NoDecisionNodesError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ChromosomeLayout {
 public:
  ChromosomeLayout() = default;
  ChromosomeLayout(std::size_t fieldWidth, std::vector<LayoutField> fields);

  std::size_t field_width() const { return fieldWidth_; }
  const std::vector<LayoutField>& fields() const { return fields_; }
  std::size_t total_bits() const { return fieldWidth_ * fields_.size(); }

  const LayoutField* field_for(const NodeId& node) const;
  // Raw code of field `f` (may exceed the branch count).
  std::uint64_t field_code(const Chromosome& c, std::size_t f) const;
  // Branch index selected at field `f`.
  std::size_t branch_index(const Chromosome& c, std::size_t f) const;
  // True when some field carries a code at or above its branch count.
  bool is_aliased(const Chromosome& c) const;

  // "4:[no,yes] 7:[no,yes] ..." summary.
  std::string describe() const;

 private:
  std::size_t fieldWidth_ = 0;
  std::vector<LayoutField> fields_;
};

// One field per decision node, in ascending id order, each
// ceil(log2(max outdegree)) bits wide (minimum 1). Throws
// NoDecisionNodesError when the graph has no decision node.
ChromosomeLayout make_layout(const FlowGraph& graph);

struct ScenarioPath {
  std::vector<NodeId> nodes;
  // Branch/event labels chosen at decision nodes, in walk order.
  std::vector<std::string> edgeLabels;
  long fitness = 0;
  // Reached a final node.
  bool complete = false;

  friend bool operator==(const ScenarioPath&, const ScenarioPath&) = default;
};

std::string join_path(const std::vector<NodeId>& nodes, std::string_view sep);

// Walks from the initial node. A decision node takes the branch selected by
// its field; a fork appends its region members in ascending id order and
// continues at the join; a step into an already visited node is dropped and
// the walk resumes at the nearest (by hops, then lowest id) unvisited node
// reachable from it. Stops at a final node or when nothing is left to visit.
// `fitness` is left at 0. The layout may be empty for decision-free graphs.
ScenarioPath decode_path(const FlowGraph& graph, const ChromosomeLayout& layout,
                         const Chromosome& c);

// decode_path and evaluate compiled once for a graph/layout pair, for
// callers decoding many chromosomes. Holds references to both.
class PathDecoder {
 public:
  PathDecoder(const FlowGraph& graph, const ChromosomeLayout& layout);

  ScenarioPath decode(const Chromosome& c) const;
  // Same as decode with fitness summed from `weights`.
  ScenarioPath evaluate(const Chromosome& c, const WeightTable& weights) const;

 private:
  struct Step {
    bool final = false;
    // Index into layout fields, or -1.
    int field = -1;
    // Fork members in ascending id order, then the join; empty otherwise.
    std::vector<std::size_t> region;
    std::vector<std::size_t> targets;
  };

  std::vector<std::size_t> walk(const Chromosome& c, std::vector<std::string>* labels,
                                bool& complete) const;

  const FlowGraph& graph_;
  const ChromosomeLayout& layout_;
  std::vector<Step> steps_;
};

// Sum of the totals over the decoded path.
long fitness(const FlowGraph& graph, const WeightTable& weights,
             const ChromosomeLayout& layout, const Chromosome& c);

// decode_path with fitness filled in.
ScenarioPath evaluate(const FlowGraph& graph, const WeightTable& weights,
                      const ChromosomeLayout& layout, const Chromosome& c);

}  // namespace tcprio

#endif  // TCPRIO_ENCODING_H_
