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

#include "tcprio/graph.h"

#include <algorithm>
#include <deque>
#include <queue>
#include <set>
#include <sstream>

namespace tcprio {
namespace {

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out.push_back(c);
  }
  return out + "\"";
}

std::vector<NodeId> distinct_targets(const FlowGraph& g, const NodeId& id) {
  std::vector<NodeId> out;
  for (std::size_t e : g.out_edges(id)) {
    const NodeId& t = g.edges()[e].target;
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  }
  return out;
}

// Members of the region opened by `fork`, plus its single matching join.
ForkRegion find_fork_region(const FlowGraph& g, const NodeId& fork) {
  ForkRegion region;
  region.fork = fork;
  std::set<NodeId> members;
  std::optional<NodeId> join;

  auto branches = distinct_targets(g, fork);
  if (branches.empty()) throw GraphError("fork " + fork.str() + " has no branches");
  for (const NodeId& start : branches) {
    std::set<NodeId> seen;
    std::set<NodeId> joins;
    std::deque<NodeId> queue;
    auto visit = [&](const NodeId& id) {
      if (id == fork) {
        throw GraphError("fork " + fork.str() + " is re-entered from its own branch");
      }
      const GraphNode& n = g.node(id);
      if (n.kind == NodeKind::Join) {
        joins.insert(id);
        return;
      }
      if (n.kind == NodeKind::Final) {
        throw GraphError("a branch of fork " + fork.str() + " reaches final node " +
                         id.str() + " without a join");
      }
      if (n.kind == NodeKind::Fork) {
        throw GraphError("fork " + id.str() + " is nested inside the region of fork " +
                         fork.str() + "; nested fork regions are not supported");
      }
      if (seen.insert(id).second) queue.push_back(id);
    };
    visit(start);
    while (!queue.empty()) {
      NodeId cur = queue.front();
      queue.pop_front();
      auto outs = distinct_targets(g, cur);
      if (outs.empty()) {
        throw GraphError("a branch of fork " + fork.str() + " ends at " + cur.str() +
                         " without a join");
      }
      for (const NodeId& t : outs) visit(t);
    }
    if (joins.size() != 1) {
      throw GraphError("every branch of fork " + fork.str() +
                       " must reach exactly one matching join");
    }
    if (join && *join != *joins.begin()) {
      throw GraphError("branches of fork " + fork.str() + " end at different joins (" +
                       join->str() + ", " + joins.begin()->str() + ")");
    }
    join = *joins.begin();
    members.insert(seen.begin(), seen.end());
  }
  region.join = *join;

  // Kahn's algorithm restricted to the region, smallest id first.
  std::map<NodeId, int> indegree;
  for (const NodeId& m : members) indegree[m] = 0;
  for (const NodeId& m : members) {
    for (const NodeId& t : distinct_targets(g, m)) {
      if (members.count(t)) ++indegree[t];
    }
  }
  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
  for (const auto& [id, deg] : indegree) {
    if (deg == 0) ready.push(id);
  }
  while (!ready.empty()) {
    NodeId cur = ready.top();
    ready.pop();
    region.members.push_back(cur);
    for (const NodeId& t : distinct_targets(g, cur)) {
      if (members.count(t) && --indegree[t] == 0) ready.push(t);
    }
  }
  if (region.members.size() != members.size()) {
    throw GraphError("the region of fork " + fork.str() + " contains a cycle");
  }
  return region;
}

}  // namespace

std::string_view to_string(GraphKind kind) { return kind == GraphKind::Cfg ? "CFG" : "SDG"; }

void FlowGraph::assemble(GraphKind kind, const DiagramModel& model) {
  kind_ = kind;
  name_ = model.name;
  pins_ = model.pins;
  for (const auto& n : model.nodes) {
    GraphNode gn;
    gn.id = n.id;
    gn.kind = n.kind;
    gn.label = n.label;
    nodes_.push_back(std::move(gn));
  }
  std::sort(nodes_.begin(), nodes_.end(),
            [](const GraphNode& a, const GraphNode& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!index_.emplace(nodes_[i].id, i).second) {
      throw GraphError("duplicate node id '" + nodes_[i].id.str() + "'");
    }
  }
  out_.resize(nodes_.size());
  in_.resize(nodes_.size());
  for (const auto& t : model.transitions) {
    if (!contains(t.source) || !contains(t.target)) {
      throw GraphError("edge " + t.source.str() + " -> " + t.target.str() +
                       " references an unknown node");
    }
    out_[index_of(t.source)].push_back(edges_.size());
    in_[index_of(t.target)].push_back(edges_.size());
    edges_.push_back({t.source, t.target, t.label});
  }

  int initials = 0;
  for (const auto& n : nodes_) {
    if (n.kind == NodeKind::Initial) {
      initial_ = n.id;
      ++initials;
    }
    if (n.kind == NodeKind::Final) finals_.push_back(n.id);
  }
  if (initials != 1) throw GraphError(name_ + ": expected exactly one initial node");
  if (finals_.empty()) throw GraphError(name_ + ": expected at least one final node");
  if (fanin_fanout(*this, initial_).fanin != 0) {
    throw GraphError(name_ + ": initial node " + initial_.str() + " has incoming edges");
  }
  for (const NodeId& f : finals_) {
    if (!out_edges(f).empty()) {
      throw GraphError(name_ + ": final node " + f.str() + " has outgoing edges");
    }
  }

  std::set<NodeId> seen{initial_};
  std::deque<NodeId> queue{initial_};
  while (!queue.empty()) {
    NodeId cur = queue.front();
    queue.pop_front();
    for (std::size_t e : out_edges(cur)) {
      if (seen.insert(edges_[e].target).second) queue.push_back(edges_[e].target);
    }
  }
  for (const auto& n : nodes_) {
    if (!seen.count(n.id)) {
      throw GraphError(name_ + ": node " + n.id.str() + " is unreachable from the initial node");
    }
  }
}

std::size_t FlowGraph::index_of(const NodeId& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw UnknownNodeError(id);
  return it->second;
}

bool FlowGraph::is_final(const NodeId& id) const {
  return std::find(finals_.begin(), finals_.end(), id) != finals_.end();
}

bool FlowGraph::is_decision(const NodeId& id) const {
  return std::binary_search(decisions_.begin(), decisions_.end(), id);
}

std::span<const std::size_t> FlowGraph::out_edges(const NodeId& id) const {
  return out_[index_of(id)];
}

std::span<const std::size_t> FlowGraph::in_edges(const NodeId& id) const {
  return in_[index_of(id)];
}

const ForkRegion* FlowGraph::fork_region(const NodeId& fork) const {
  auto it = std::find_if(regions_.begin(), regions_.end(),
                         [&](const ForkRegion& r) { return r.fork == fork; });
  return it == regions_.end() ? nullptr : &*it;
}

std::string FlowGraph::to_dot() const {
  std::ostringstream os;
  int cluster = 0;
  auto emit = [&](auto& self, const FlowGraph& g, const std::string& indent) -> void {
    for (const auto& n : g.nodes()) {
      std::string shape = "box";
      switch (n.kind) {
        case NodeKind::Initial: shape = "circle"; break;
        case NodeKind::Final: shape = "doublecircle"; break;
        case NodeKind::Decision:
        case NodeKind::Merge: shape = "diamond"; break;
        case NodeKind::Fork:
        case NodeKind::Join: shape = "box3d"; break;
        default: break;
      }
      if (g.is_decision(n.id) && n.kind != NodeKind::Decision) shape = "diamond";
      std::string label = n.id.str();
      if (!n.label.empty()) label += "\n" + n.label;
      os << indent << dot_quote(n.id.str()) << " [label=" << dot_quote(label)
         << " shape=" << shape << (n.concurrent ? " style=rounded" : "") << "];\n";
    }
    for (const auto& e : g.edges()) {
      os << indent << dot_quote(e.source.str()) << " -> " << dot_quote(e.target.str());
      if (!e.label.empty()) os << " [label=" << dot_quote(e.label) << "]";
      os << ";\n";
    }
    for (const auto& n : g.nodes()) {
      if (!n.nested) continue;
      os << indent << "subgraph cluster_" << cluster++ << " {\n";
      os << indent << "  label=" << dot_quote(n.nested->name()) << ";\n";
      self(self, *n.nested, indent + "  ");
      os << indent << "}\n";
      os << indent << dot_quote(n.id.str()) << " -> " << dot_quote(n.nested->initial().str())
         << " [style=dashed];\n";
    }
  };
  os << "digraph " << dot_quote(name_) << " {\n";
  emit(emit, *this, "  ");
  os << "}\n";
  return os.str();
}

FlowGraph build_cfg(const ResolvedModel& resolved) {
  const DiagramModel& model = resolved.model;
  if (model.kind != ModelKind::Activity) {
    throw GraphError(model.name + ": a CFG is built from an activity model");
  }
  FlowGraph g;
  g.assemble(GraphKind::Cfg, model);

  for (const auto& n : g.nodes_) {
    if (n.kind != NodeKind::Decision) continue;
    if (distinct_targets(g, n.id).size() < 2) {
      throw GraphError(model.name + ": decision node " + n.id.str() +
                       " needs at least two distinct successors");
    }
    g.decisions_.push_back(n.id);
  }

  for (const auto& n : g.nodes_) {
    if (n.kind != NodeKind::Fork) continue;
    ForkRegion region = find_fork_region(g, n.id);
    for (const NodeId& m : region.members) {
      GraphNode& gm = g.nodes_[g.index_of(m)];
      if (gm.concurrent) {
        throw GraphError(model.name + ": node " + m.str() + " belongs to two fork regions");
      }
      gm.concurrent = true;
    }
    g.regions_.push_back(std::move(region));
  }

  for (const auto& [host, sub] : resolved.nested) {
    if (!g.contains(host)) {
      throw GraphError(model.name + ": sub-activity host " + host.str() + " does not exist");
    }
    g.nodes_[g.index_of(host)].nested =
        std::make_shared<const FlowGraph>(build_flow_graph(*sub));
  }
  return g;
}

FlowGraph build_sdg(const DiagramModel& model) {
  if (model.kind != ModelKind::StateChart) {
    throw GraphError(model.name + ": an SDG is built from a state chart");
  }
  FlowGraph g;
  g.assemble(GraphKind::Sdg, model);
  for (const auto& n : g.nodes_) {
    std::size_t outs = g.out_edges(n.id).size();
    if (outs == 0 && n.kind != NodeKind::Final) {
      throw GraphError(model.name + ": state " + n.id.str() +
                       " has no outgoing event and is not final");
    }
    if (outs >= 2) g.decisions_.push_back(n.id);
  }
  return g;
}

FlowGraph build_flow_graph(const ResolvedModel& model) {
  if (model.model.kind == ModelKind::Activity) return build_cfg(model);
  return build_sdg(model.model);
}

Fan fanin_fanout(const FlowGraph& graph, const NodeId& id) {
  std::set<NodeId> preds;
  std::set<NodeId> succs;
  for (std::size_t e : graph.in_edges(id)) {
    const NodeId& s = graph.edges()[e].source;
    if (s != id) preds.insert(s);
  }
  for (std::size_t e : graph.out_edges(id)) {
    const NodeId& t = graph.edges()[e].target;
    if (t != id) succs.insert(t);
  }
  return {static_cast<int>(preds.size()), static_cast<int>(succs.size())};
}

}  // namespace tcprio
