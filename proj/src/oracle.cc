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

#include "tcprio/oracle.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <unordered_map>

namespace tcprio {

std::vector<Chromosome> OracleResult::argmax() const {
  std::vector<Chromosome> out;
  for (const OracleEntry& e : entries) {
    if (e.path.fitness != maximum()) break;
    out.push_back(e.chromosome);
  }
  return out;
}

const OracleEntry* OracleResult::find(const Chromosome& c) const {
  if (c.size() != totalBits) return nullptr;
  auto it = std::find_if(entries.begin(), entries.end(),
                         [&](const OracleEntry& e) { return e.chromosome == c; });
  return it == entries.end() ? nullptr : &*it;
}

OracleResult enumerate_all(const FlowGraph& graph, const WeightTable& weights,
                           const ChromosomeLayout& layout, std::size_t maxBits) {
  const std::size_t bits = layout.total_bits();
  if (bits > maxBits || bits >= 64) throw SearchSpaceTooLarge(bits, std::min<std::size_t>(maxBits, 63));

  OracleResult out;
  out.totalBits = bits;
  out.totalChromosomes = std::size_t{1} << bits;
  std::vector<OracleEntry> raw;
  raw.reserve(out.totalChromosomes);
  std::unordered_map<std::string, std::size_t> by_nodes;
  const PathDecoder decoder(graph, layout);
  std::string key;
  for (std::uint64_t v = 0; v < out.totalChromosomes; ++v) {
    Chromosome c = Chromosome::from_value(v, bits);
    ScenarioPath p = decoder.evaluate(c, weights);
    key.clear();
    for (const NodeId& n : p.nodes) key.append(n.str()).push_back('\n');
    auto [it, fresh] = by_nodes.try_emplace(key, out.distinctPaths.size());
    if (fresh) out.distinctPaths.push_back({p, {}});
    out.distinctPaths[it->second].chromosomes.push_back(c);
    const bool aliased = layout.is_aliased(c);
    raw.push_back({std::move(c), std::move(p), aliased});
  }

  std::vector<std::size_t> order(raw.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return raw[a].path.fitness > raw[b].path.fitness;
  });
  out.entries.reserve(raw.size());
  for (std::size_t i : order) out.entries.push_back(std::move(raw[i]));
  std::stable_sort(out.distinctPaths.begin(), out.distinctPaths.end(),
                   [](const DistinctPath& a, const DistinctPath& b) {
                     return a.path.fitness > b.path.fitness;
                   });
  return out;
}

VerificationReport verify_run(const GaRunResult& run, const OracleResult& oracle) {
  if (run.bestChromosome.size() != oracle.totalBits) {
    throw LayoutMismatchError("GA chromosomes are " + std::to_string(run.bestChromosome.size()) +
                              " bits, oracle enumerated " + std::to_string(oracle.totalBits));
  }
  if (run.bestFitness > oracle.maximum()) {
    throw LayoutMismatchError("GA best fitness " + std::to_string(run.bestFitness) +
                              " exceeds the enumerated maximum " +
                              std::to_string(oracle.maximum()));
  }
  std::map<std::vector<NodeId>, long> inventory;
  for (const DistinctPath& d : oracle.distinctPaths) inventory.emplace(d.path.nodes, d.path.fitness);
  for (const CoveredPath& cp : run.coveredPaths) {
    auto it = inventory.find(cp.path.nodes);
    if (it == inventory.end() || it->second != cp.path.fitness) {
      throw LayoutMismatchError("GA path " + join_path(cp.path.nodes, "-") +
                                " is not in the enumerated inventory");
    }
  }

  VerificationReport r;
  r.gaBest = run.bestFitness;
  r.oracleMaximum = oracle.maximum();
  r.gap = r.oracleMaximum - r.gaBest;
  r.optimumFound = r.gap == 0;
  r.pathsCovered = run.coveredPaths.size();
  r.pathsTotal = oracle.distinctPaths.size();
  r.coverage = r.pathsTotal == 0 ? 0.0
                                 : static_cast<double>(r.pathsCovered) /
                                       static_cast<double>(r.pathsTotal);
  return r;
}

std::vector<BranchCombination> declared_branch_combinations(const ChromosomeLayout& layout) {
  std::vector<BranchCombination> out;
  const auto& fields = layout.fields();
  if (fields.empty()) return out;
  // Odometer over branch indices; the last field varies fastest.
  std::vector<std::size_t> idx(fields.size(), 0);
  while (true) {
    std::string bits;
    BranchCombination combo;
    for (std::size_t f = 0; f < fields.size(); ++f) {
      bits += Chromosome::from_value(idx[f], layout.field_width()).str();
      combo.labels.push_back(fields[f].labels[idx[f]]);
    }
    combo.chromosome = Chromosome(std::move(bits));
    out.push_back(std::move(combo));

    std::size_t f = fields.size();
    while (f > 0) {
      --f;
      if (++idx[f] < fields[f].targets.size()) break;
      idx[f] = 0;
      if (f == 0) return out;
    }
  }
}

}  // namespace tcprio
