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

#ifndef TCPRIO_COMPLEXITY_H_
#define TCPRIO_COMPLEXITY_H_

// Node complexity: stack-based weight (A), information-flow complexity
// IF = FANIN x FANOUT (B), and their sum plus any nested sub-activity total.

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "tcprio/graph.h"

namespace tcprio {

class WeightTable;

struct StackPush {
  // Number of nodes below this one on the stack (k).
  std::size_t depth = 0;
  // Stack size once the node is on it (k + 1).
  std::size_t stackSize = 0;
  // s_max - k.
  long contribution = 0;
};

struct StackEvent {
  enum class Kind { Push, Pop };
  Kind kind = Kind::Push;
  NodeId node;
  std::size_t depth = 0;
};

struct StackTraceRecord {
  std::size_t maxStackSize = 0;
  std::vector<StackEvent> events;
};

struct NodeWeight {
  NodeId node;
  long stackWeight = 0;
  long ifComplexity = 0;
  long nestedComplexity = 0;
  long total = 0;
  std::vector<StackPush> pushLog;
  // Values derived from the graph; differ from the effective ones above only
  // where the model pins a published value.
  long computedStackWeight = 0;
  long computedIfComplexity = 0;
  bool stackPinned = false;
  bool ifPinned = false;
  std::string pinNote;
  std::shared_ptr<const WeightTable> nested;
};

class WeightTable {
 public:
  WeightTable() = default;
  WeightTable(std::string graphName, std::size_t maxStackSize, std::vector<NodeWeight> rows);

  const std::string& graph_name() const { return graphName_; }
  std::size_t max_stack_size() const { return maxStackSize_; }
  const std::vector<NodeWeight>& rows() const { return rows_; }
  const NodeWeight& at(const NodeId& id) const;
  long total(const NodeId& id) const { return at(id).total; }
  // Sum of every row's total.
  long grand_total() const;

 private:
  std::string graphName_;
  std::size_t maxStackSize_ = 0;
  std::vector<NodeWeight> rows_;
};

// Stack-based weights. The traversal pushes nodes along every loop-once walk
// from the initial node (depth-first). A fork region is pushed as a chain in
// its topological member order, then its join. A decision node is only
// entered at its minimum depth; reaching it again through another branch is
// neglected together with everything behind it. Each distinct (node, depth)
// pair is one push contributing s_max - depth, with s_max the deepest stack
// seen. Only stackWeight/pushLog are filled; pins are not applied.
std::pair<WeightTable, StackTraceRecord> stack_weights(const FlowGraph& graph);

// FANIN x FANOUT. Throws UnknownNodeError.
long if_complexity(const FlowGraph& graph, const NodeId& id);

// Full table: A + B (pins applied), plus the nested total of any sub-graph.
WeightTable total_complexity(const FlowGraph& graph);

// Sum of the totals of every node of `sub` (deeper nests included); 0 for a
// null graph.
long nested_complexity(const FlowGraph* sub);

}  // namespace tcprio

#endif  // TCPRIO_COMPLEXITY_H_
