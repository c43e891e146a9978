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

#ifndef TCPRIO_ORACLE_H_
#define TCPRIO_ORACLE_H_

// Exhaustive enumeration of a chromosome space, used to check GA results
// against the true optimum and the full path inventory.

#include <stdexcept>
#include <string>
#include <vector>

#include "tcprio/encoding.h"
#include "tcprio/ga.h"

namespace tcprio {

inline constexpr std::size_t kMaxOracleBits = 24;

class SearchSpaceTooLarge : public std::runtime_error {
 public:
  SearchSpaceTooLarge(std::size_t bits, std::size_t limit)
      : std::runtime_error("chromosome space of " + std::to_string(bits) +
                           " bits exceeds the enumeration bound of " + std::to_string(limit) +
                           " bits"),
        bits_(bits) {}
  std::size_t bits() const { return bits_; }

 private:
  std::size_t bits_;
};

class LayoutMismatchError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct OracleEntry {
  Chromosome chromosome;
  ScenarioPath path;
  bool aliased = false;
};

struct DistinctPath {
  ScenarioPath path;
  // Ascending bit value.
  std::vector<Chromosome> chromosomes;
};

struct OracleResult {
  std::size_t totalBits = 0;
  std::size_t totalChromosomes = 0;
  // Descending fitness, ties by ascending bit value.
  std::vector<OracleEntry> entries;
  // Keyed by node sequence; descending fitness, then by first chromosome.
  std::vector<DistinctPath> distinctPaths;

  long maximum() const { return entries.empty() ? 0 : entries.front().path.fitness; }
  // Every entry reaching the maximum.
  std::vector<Chromosome> argmax() const;
  const OracleEntry* find(const Chromosome& c) const;
};

// Throws SearchSpaceTooLarge beyond `maxBits`.
OracleResult enumerate_all(const FlowGraph& graph, const WeightTable& weights,
                           const ChromosomeLayout& layout,
                           std::size_t maxBits = kMaxOracleBits);

struct VerificationReport {
  bool optimumFound = false;
  long gaBest = 0;
  long oracleMaximum = 0;
  long gap = 0;
  std::size_t pathsCovered = 0;
  std::size_t pathsTotal = 0;
  double coverage = 0.0;
};

// Throws LayoutMismatchError when the run cannot come from the enumerated
// space: different chromosome width, a best fitness above the maximum, or a
// covered path missing from the inventory.
VerificationReport verify_run(const GaRunResult& run, const OracleResult& oracle);

struct BranchCombination {
  Chromosome chromosome;
  // One label per decision field, in field order.
  std::vector<std::string> labels;
};

// Chromosomes whose every field holds a declared branch code, in bit-value
// order. Their count is the product of the decision outdegrees.
std::vector<BranchCombination> declared_branch_combinations(const ChromosomeLayout& layout);

}  // namespace tcprio

#endif  // TCPRIO_ORACLE_H_
