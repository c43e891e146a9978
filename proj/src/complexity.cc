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

#include "tcprio/complexity.h"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace tcprio {
namespace {

// Successor relation used by the stack traversal: fork regions collapse into
// a chain fork -> m1 -> ... -> mk -> join.
class PushOrder {
 public:
  explicit PushOrder(const FlowGraph& g) : g_(g), succ_(g.nodes().size()) {
    std::vector<bool> in_region(g.nodes().size(), false);
    for (const ForkRegion& r : g.fork_regions()) {
      std::vector<NodeId> chain{r.fork};
      chain.insert(chain.end(), r.members.begin(), r.members.end());
      chain.push_back(r.join);
      for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        std::size_t at = g.index_of(chain[i]);
        succ_[at] = {g.index_of(chain[i + 1])};
        in_region[at] = true;
      }
    }
    for (std::size_t i = 0; i < g.nodes().size(); ++i) {
      if (in_region[i]) continue;
      for (std::size_t e : g.out_edges(g.nodes()[i].id)) {
        std::size_t t = g.index_of(g.edges()[e].target);
        if (std::find(succ_[i].begin(), succ_[i].end(), t) == succ_[i].end()) {
          succ_[i].push_back(t);
        }
      }
    }
  }

  const std::vector<std::size_t>& successors(std::size_t i) const { return succ_[i]; }
  std::size_t size() const { return succ_.size(); }

  std::vector<std::size_t> min_depths(std::size_t root) const {
    std::vector<std::size_t> depth(size(), kUnreached);
    std::deque<std::size_t> queue{root};
    depth[root] = 0;
    while (!queue.empty()) {
      std::size_t cur = queue.front();
      queue.pop_front();
      for (std::size_t t : succ_[cur]) {
        if (depth[t] == kUnreached) {
          depth[t] = depth[cur] + 1;
          queue.push_back(t);
        }
      }
    }
    return depth;
  }

  bool acyclic() const {
    enum : char { kWhite, kGrey, kBlack };
    std::vector<char> color(size(), kWhite);
    auto visit = [&](auto& self, std::size_t i) -> bool {
      color[i] = kGrey;
      for (std::size_t t : succ_[i]) {
        if (color[t] == kGrey) return false;
        if (color[t] == kWhite && !self(self, t)) return false;
      }
      color[i] = kBlack;
      return true;
    };
    for (std::size_t i = 0; i < size(); ++i) {
      if (color[i] == kWhite && !visit(visit, i)) return false;
    }
    return true;
  }

  static constexpr std::size_t kUnreached = static_cast<std::size_t>(-1);

 private:
  const FlowGraph& g_;
  std::vector<std::vector<std::size_t>> succ_;
};

class StackWalker {
 public:
  explicit StackWalker(const FlowGraph& g)
      : g_(g), order_(g), min_depth_(order_.min_depths(g.index_of(g.initial()))),
        memoize_(order_.acyclic()), on_path_(order_.size(), false) {}

  void run() { walk(g_.index_of(g_.initial()), 0); }

  // Distinct (node index, depth) pairs in first-push order.
  const std::vector<std::pair<std::size_t, std::size_t>>& pushes() const { return pushes_; }
  std::vector<StackEvent> take_events() { return std::move(events_); }

 private:
  void walk(std::size_t node, std::size_t depth) {
    const NodeId& id = g_.nodes()[node].id;
    if (seen_.insert({node, depth}).second) {
      pushes_.push_back({node, depth});
    } else if (memoize_) {
      // Acyclic: everything behind (node, depth) has already been pushed.
      return;
    }
    events_.push_back({StackEvent::Kind::Push, id, depth});
    on_path_[node] = true;
    for (std::size_t next : order_.successors(node)) {
      if (on_path_[next]) continue;
      if (g_.is_decision(g_.nodes()[next].id) && min_depth_[next] != depth + 1) continue;
      walk(next, depth + 1);
    }
    on_path_[node] = false;
    events_.push_back({StackEvent::Kind::Pop, id, depth});
  }

  const FlowGraph& g_;
  PushOrder order_;
  std::vector<std::size_t> min_depth_;
  bool memoize_;
  std::vector<bool> on_path_;
  std::set<std::pair<std::size_t, std::size_t>> seen_;
  std::vector<std::pair<std::size_t, std::size_t>> pushes_;
  std::vector<StackEvent> events_;
};

}  // namespace

WeightTable::WeightTable(std::string graphName, std::size_t maxStackSize,
                         std::vector<NodeWeight> rows)
    : graphName_(std::move(graphName)), maxStackSize_(maxStackSize), rows_(std::move(rows)) {
  std::stable_sort(rows_.begin(), rows_.end(),
                   [](const NodeWeight& a, const NodeWeight& b) { return a.node < b.node; });
}

const NodeWeight& WeightTable::at(const NodeId& id) const {
  auto it = std::lower_bound(rows_.begin(), rows_.end(), id,
                             [](const NodeWeight& w, const NodeId& key) { return w.node < key; });
  if (it == rows_.end() || it->node != id) throw UnknownNodeError(id);
  return *it;
}

long WeightTable::grand_total() const {
  return std::accumulate(rows_.begin(), rows_.end(), 0L,
                         [](long acc, const NodeWeight& w) { return acc + w.total; });
}

std::pair<WeightTable, StackTraceRecord> stack_weights(const FlowGraph& graph) {
  StackWalker walker(graph);
  walker.run();

  std::size_t max_depth = 0;
  for (const auto& [node, depth] : walker.pushes()) max_depth = std::max(max_depth, depth);
  const std::size_t s_max = max_depth + 1;

  std::vector<NodeWeight> rows(graph.nodes().size());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].node = graph.nodes()[i].id;
  for (const auto& [node, depth] : walker.pushes()) {
    long w = static_cast<long>(s_max - depth);
    rows[node].pushLog.push_back({depth, depth + 1, w});
    rows[node].stackWeight += w;
  }
  for (auto& r : rows) {
    std::sort(r.pushLog.begin(), r.pushLog.end(),
              [](const StackPush& a, const StackPush& b) { return a.depth < b.depth; });
    r.computedStackWeight = r.stackWeight;
    r.total = r.stackWeight;
  }

  StackTraceRecord trace;
  trace.maxStackSize = s_max;
  trace.events = walker.take_events();
  return {WeightTable(graph.name(), s_max, std::move(rows)), std::move(trace)};
}

long if_complexity(const FlowGraph& graph, const NodeId& id) {
  Fan f = fanin_fanout(graph, id);
  return static_cast<long>(f.fanin) * f.fanout;
}

WeightTable total_complexity(const FlowGraph& graph) {
  auto [stack, trace] = stack_weights(graph);
  std::vector<NodeWeight> rows = stack.rows();
  for (NodeWeight& r : rows) {
    r.computedIfComplexity = if_complexity(graph, r.node);
    r.ifComplexity = r.computedIfComplexity;
    for (const ComplexityPin& pin : graph.pins()) {
      if (pin.node != r.node) continue;
      if (pin.metric == PinnedMetric::StackWeight) {
        r.stackWeight = pin.value;
        r.stackPinned = true;
      } else {
        r.ifComplexity = pin.value;
        r.ifPinned = true;
      }
      if (!pin.note.empty()) {
        if (!r.pinNote.empty()) r.pinNote += "; ";
        r.pinNote += pin.note;
      }
    }
    const GraphNode& gn = graph.node(r.node);
    if (gn.nested) {
      auto sub = std::make_shared<const WeightTable>(total_complexity(*gn.nested));
      r.nestedComplexity = sub->grand_total();
      r.nested = std::move(sub);
    }
    r.total = r.stackWeight + r.ifComplexity + r.nestedComplexity;
  }
  return WeightTable(graph.name(), stack.max_stack_size(), std::move(rows));
}

long nested_complexity(const FlowGraph* sub) {
  if (!sub) return 0;
  return total_complexity(*sub).grand_total();
}

}  // namespace tcprio
