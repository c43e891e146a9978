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

#include "tcprio/encoding.h"

#include <algorithm>
#include <bit>
#include <optional>
#include <set>
#include <sstream>

namespace tcprio {

Chromosome::Chromosome(std::string bits) : bits_(std::move(bits)) {
  if (bits_.empty()) throw std::invalid_argument("empty chromosome");
  for (char c : bits_) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("chromosome '" + bits_ + "' is not a 0/1 string");
    }
  }
}

Chromosome Chromosome::from_value(std::uint64_t value, std::size_t width) {
  std::string bits(width, '0');
  for (std::size_t i = 0; i < width && i < 64; ++i) {
    if ((value >> i) & 1u) bits[width - 1 - i] = '1';
  }
  return Chromosome(std::move(bits));
}

std::uint64_t Chromosome::value() const {
  std::uint64_t v = 0;
  for (char c : bits_) v = (v << 1) | static_cast<std::uint64_t>(c == '1');
  return v;
}

int Chromosome::popcount() const {
  return static_cast<int>(std::count(bits_.begin(), bits_.end(), '1'));
}

Chromosome Chromosome::with_flipped(std::size_t i) const {
  Chromosome out = *this;
  out.bits_.at(i) = bits_[i] == '1' ? '0' : '1';
  return out;
}

std::strong_ordering operator<=>(const Chromosome& a, const Chromosome& b) {
  if (a.bits_.size() != b.bits_.size()) return a.bits_.size() <=> b.bits_.size();
  return a.bits_.compare(b.bits_) <=> 0;
}

ChromosomeLayout::ChromosomeLayout(std::size_t fieldWidth, std::vector<LayoutField> fields)
    : fieldWidth_(fieldWidth), fields_(std::move(fields)) {}

const LayoutField* ChromosomeLayout::field_for(const NodeId& node) const {
  auto it = std::find_if(fields_.begin(), fields_.end(),
                         [&](const LayoutField& f) { return f.node == node; });
  return it == fields_.end() ? nullptr : &*it;
}

std::uint64_t ChromosomeLayout::field_code(const Chromosome& c, std::size_t f) const {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < fieldWidth_; ++i) {
    v = (v << 1) | static_cast<std::uint64_t>(c.bit(f * fieldWidth_ + i));
  }
  return v;
}

std::size_t ChromosomeLayout::branch_index(const Chromosome& c, std::size_t f) const {
  return static_cast<std::size_t>(field_code(c, f) % fields_[f].targets.size());
}

bool ChromosomeLayout::is_aliased(const Chromosome& c) const {
  for (std::size_t f = 0; f < fields_.size(); ++f) {
    if (field_code(c, f) >= fields_[f].targets.size()) return true;
  }
  return false;
}

std::string ChromosomeLayout::describe() const {
  std::ostringstream os;
  os << fields_.size() << " field(s) x " << fieldWidth_ << " bit(s) = " << total_bits()
     << " bits:";
  for (const auto& f : fields_) {
    os << ' ' << f.node << ":[";
    for (std::size_t i = 0; i < f.labels.size(); ++i) {
      if (i) os << ',';
      os << (f.labels[i].empty() ? f.targets[i].str() : f.labels[i]);
    }
    os << ']';
  }
  return os.str();
}

ChromosomeLayout make_layout(const FlowGraph& graph) {
  if (graph.decision_nodes().empty()) {
    throw NoDecisionNodesError(graph.name() + " has no decision nodes");
  }
  std::vector<LayoutField> fields;
  std::size_t max_out = 0;
  for (const NodeId& d : graph.decision_nodes()) {
    LayoutField f;
    f.node = d;
    for (std::size_t e : graph.out_edges(d)) {
      f.targets.push_back(graph.edges()[e].target);
      f.labels.push_back(graph.edges()[e].label);
    }
    max_out = std::max(max_out, f.targets.size());
    fields.push_back(std::move(f));
  }
  std::size_t width = std::max<std::size_t>(1, std::bit_width(max_out - 1));
  return ChromosomeLayout(width, std::move(fields));
}

std::string join_path(const std::vector<NodeId>& nodes, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i) out += sep;
    out += nodes[i].str();
  }
  return out;
}

PathDecoder::PathDecoder(const FlowGraph& graph, const ChromosomeLayout& layout)
    : graph_(graph), layout_(layout), steps_(graph.nodes().size()) {
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    const NodeId& id = graph.nodes()[i].id;
    Step& s = steps_[i];
    s.final = graph.is_final(id);
    for (std::size_t e : graph.out_edges(id)) s.targets.push_back(graph.index_of(graph.edges()[e].target));
    if (const ForkRegion* region = graph.fork_region(id)) {
      for (const NodeId& m : region->members) s.region.push_back(graph.index_of(m));
      std::sort(s.region.begin(), s.region.end());
      s.region.push_back(graph.index_of(region->join));
    }
  }
  for (std::size_t f = 0; f < layout.fields().size(); ++f) {
    const LayoutField& field = layout.fields()[f];
    Step& s = steps_.at(graph.index_of(field.node));
    s.field = static_cast<int>(f);
    s.targets.clear();
    for (const NodeId& t : field.targets) s.targets.push_back(graph.index_of(t));
  }
}

std::vector<std::size_t> PathDecoder::walk(const Chromosome& c, std::vector<std::string>* labels,
                                           bool& complete) const {
  if (c.size() != layout_.total_bits()) {
    throw std::invalid_argument("chromosome length " + std::to_string(c.size()) +
                                " does not match layout width " +
                                std::to_string(layout_.total_bits()));
  }
  const std::size_t n = steps_.size();
  std::vector<char> visited(n, 0);
  std::vector<std::size_t> path;
  auto append = [&](std::size_t i) {
    path.push_back(i);
    visited[i] = 1;
  };
  // Nearest unvisited node reachable from `from`; node indices follow id order.
  auto resume = [&](std::size_t from) -> std::optional<std::size_t> {
    std::vector<char> seen(n, 0);
    seen[from] = 1;
    std::vector<std::size_t> frontier{from};
    while (!frontier.empty()) {
      std::vector<std::size_t> next;
      for (std::size_t i : frontier) {
        for (std::size_t t : steps_[i].targets) {
          if (!seen[t]) {
            seen[t] = 1;
            next.push_back(t);
          }
        }
      }
      std::sort(next.begin(), next.end());
      for (std::size_t t : next) {
        if (!visited[t]) return t;
      }
      frontier = std::move(next);
    }
    return std::nullopt;
  };

  complete = false;
  std::size_t cur = graph_.index_of(graph_.initial());
  append(cur);
  while (true) {
    const Step& s = steps_[cur];
    if (s.final) {
      complete = true;
      break;
    }
    std::size_t next;
    if (!s.region.empty()) {
      for (std::size_t k = 0; k + 1 < s.region.size(); ++k) {
        if (!visited[s.region[k]]) append(s.region[k]);
      }
      next = s.region.back();
    } else if (s.field >= 0) {
      const std::size_t f = static_cast<std::size_t>(s.field);
      const std::size_t branch = layout_.branch_index(c, f);
      next = s.targets[branch];
      if (labels) labels->push_back(layout_.fields()[f].labels[branch]);
    } else if (!s.targets.empty()) {
      next = s.targets.front();
    } else {
      break;
    }
    if (visited[next]) {
      auto resumed = resume(next);
      if (!resumed) break;
      next = *resumed;
    }
    append(next);
    cur = next;
  }
  return path;
}

ScenarioPath PathDecoder::decode(const Chromosome& c) const {
  ScenarioPath p;
  for (std::size_t i : walk(c, &p.edgeLabels, p.complete)) p.nodes.push_back(graph_.nodes()[i].id);
  return p;
}

ScenarioPath PathDecoder::evaluate(const Chromosome& c, const WeightTable& weights) const {
  ScenarioPath p = decode(c);
  for (const NodeId& id : p.nodes) p.fitness += weights.total(id);
  return p;
}

ScenarioPath decode_path(const FlowGraph& graph, const ChromosomeLayout& layout,
                         const Chromosome& c) {
  return PathDecoder(graph, layout).decode(c);
}

long fitness(const FlowGraph& graph, const WeightTable& weights,
             const ChromosomeLayout& layout, const Chromosome& c) {
  return evaluate(graph, weights, layout, c).fitness;
}

ScenarioPath evaluate(const FlowGraph& graph, const WeightTable& weights,
                      const ChromosomeLayout& layout, const Chromosome& c) {
  return PathDecoder(graph, layout).evaluate(c, weights);
}

}  // namespace tcprio
