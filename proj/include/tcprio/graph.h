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

#ifndef TCPRIO_GRAPH_H_
#define TCPRIO_GRAPH_H_

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tcprio/model.h"
#include "tcprio/node_id.h"

namespace tcprio {

class FlowGraph;

enum class GraphKind { Cfg, Sdg };

std::string_view to_string(GraphKind kind);

struct GraphNode {
  NodeId id;
  NodeKind kind = NodeKind::Action;
  std::string label;
  // Set for nodes lying between a fork and its join.
  bool concurrent = false;
  std::shared_ptr<const FlowGraph> nested;
};

struct GraphEdge {
  NodeId source;
  NodeId target;
  std::string label;
};

// The nodes strictly between a fork and its matching join. `members` is in
// push order: topological within the region, ties by ascending id.
struct ForkRegion {
  NodeId fork;
  NodeId join;
  std::vector<NodeId> members;
};

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownNodeError : public std::out_of_range {
 public:
  explicit UnknownNodeError(const NodeId& id)
      : std::out_of_range("unknown node '" + id.str() + "'") {}
};

// Immutable CFG (activity models) or SDG (state charts).
class FlowGraph {
 public:
  GraphKind kind() const { return kind_; }
  const std::string& name() const { return name_; }

  // Ascending id order.
  const std::vector<GraphNode>& nodes() const { return nodes_; }
  // Declaration order.
  const std::vector<GraphEdge>& edges() const { return edges_; }
  // Ascending id order; one chromosome field each.
  const std::vector<NodeId>& decision_nodes() const { return decisions_; }
  const NodeId& initial() const { return initial_; }
  const std::vector<NodeId>& finals() const { return finals_; }
  const std::vector<ComplexityPin>& pins() const { return pins_; }
  const std::vector<ForkRegion>& fork_regions() const { return regions_; }

  bool contains(const NodeId& id) const { return index_.count(id) != 0; }
  std::size_t index_of(const NodeId& id) const;
  const GraphNode& node(const NodeId& id) const { return nodes_[index_of(id)]; }
  bool is_final(const NodeId& id) const;
  bool is_decision(const NodeId& id) const;

  // Indices into edges(), in declaration order.
  std::span<const std::size_t> out_edges(const NodeId& id) const;
  std::span<const std::size_t> in_edges(const NodeId& id) const;

  const ForkRegion* fork_region(const NodeId& fork) const;

  // Graphviz text; nested graphs become clusters.
  std::string to_dot() const;

 private:
  friend FlowGraph build_cfg(const ResolvedModel& model);
  friend FlowGraph build_sdg(const DiagramModel& model);

  void assemble(GraphKind kind, const DiagramModel& model);

  GraphKind kind_ = GraphKind::Cfg;
  std::string name_;
  std::vector<GraphNode> nodes_;
  std::vector<GraphEdge> edges_;
  std::vector<NodeId> decisions_;
  NodeId initial_;
  std::vector<NodeId> finals_;
  std::vector<ComplexityPin> pins_;
  std::vector<ForkRegion> regions_;
  std::map<NodeId, std::size_t> index_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
};

// Lowers an activity model; nested sub-activities are lowered recursively and
// attached to their host nodes. Throws GraphError on a fork whose branches do
// not all meet at one join, and on structural invariant violations.
FlowGraph build_cfg(const ResolvedModel& model);

// Lowers a state chart. Decision nodes are states with two or more outgoing
// events; self-loops are kept. Throws GraphError for a non-final state
// without outgoing events.
FlowGraph build_sdg(const DiagramModel& model);

// Dispatches on the model kind.
FlowGraph build_flow_graph(const ResolvedModel& model);

struct Fan {
  int fanin = 0;
  int fanout = 0;
};

// Counts of distinct other nodes passing control into / receiving control
// from `id`. Self-loops are not counted. Throws UnknownNodeError.
Fan fanin_fanout(const FlowGraph& graph, const NodeId& id);

}  // namespace tcprio

#endif  // TCPRIO_GRAPH_H_
