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

#ifndef TCPRIO_GA_H_
#define TCPRIO_GA_H_

// Genetic search over chromosomes: rank selection with adjacent pairing,
// single-point crossover, single-bit mutation, optional elitism.

#include <cstdint>
#include <optional>
#include <vector>

#include "tcprio/complexity.h"
#include "tcprio/encoding.h"
#include "tcprio/random.h"

namespace tcprio {

struct GaConfig {
  std::size_t populationSize = 4;
  double crossoverProb = 0.8;
  double mutationProb = 0.2;
  std::size_t maxIterations = 12;
  std::uint64_t seed = 0;
  bool elitism = true;
  // Stop once the population is uniform (only honored with elitism).
  bool stopOnUniform = false;
  // Stop once this many distinct paths have been decoded.
  std::optional<std::size_t> targetPathCount;
  // Explicit starting chromosomes; topped up randomly when short.
  std::vector<Chromosome> initialPopulation;
};

// Throws std::invalid_argument.
void validate(const GaConfig& cfg, const ChromosomeLayout& layout);

struct Scored {
  Chromosome chromosome;
  long fitness = 0;
};

// The override first, then uniformly random chromosomes drawn bit by bit.
std::vector<Chromosome> init_population(const ChromosomeLayout& layout, const GaConfig& cfg,
                                        RandomStream& rng);

// Descending fitness, ties by ascending bit value. Consecutive entries form
// the parent pairs.
std::vector<Scored> select(std::vector<Scored> population);

struct CrossoverOutcome {
  Chromosome first;
  Chromosome second;
  double r = 0.0;
  // Set when the suffixes were exchanged.
  std::optional<std::size_t> cut;
};

// Prefix [0, cut) of each parent kept, suffix exchanged.
std::pair<Chromosome, Chromosome> crossover_at(const Chromosome& a, const Chromosome& b,
                                               std::size_t cut);

// Draws r; below crossoverProb draws a cut in [1, size-1] and exchanges
// suffixes. Single-bit chromosomes have no cut point and pass unchanged.
CrossoverOutcome crossover(const Chromosome& a, const Chromosome& b, RandomStream& rng,
                           const GaConfig& cfg);

struct MutationOutcome {
  Chromosome result;
  double r = 0.0;
  std::optional<std::size_t> flippedBit;
};

// Bit indices count from the least significant (rightmost) bit.
Chromosome flip_bit(const Chromosome& c, std::size_t index);

// Draws r; below mutationProb flips one uniformly chosen bit.
MutationOutcome mutate(const Chromosome& c, RandomStream& rng, const GaConfig& cfg);

struct GaTraceRow {
  std::size_t iteration = 0;
  // Position in rank order.
  std::size_t rank = 0;
  Chromosome x;
  long fx = 0;
  // Crossover draw of this row's pair.
  double r = 0.0;
  std::optional<std::size_t> cut;
  Chromosome c;
  double mutationR = 0.0;
  std::optional<std::size_t> flippedBit;
  Chromosome m;
  long fPrime = 0;
  // Elitism put the previous best in place of this offspring; `survivor`
  // is what enters the next generation.
  bool elite = false;
  Chromosome survivor;
  long survivorFitness = 0;
};

struct CoveredPath {
  ScenarioPath path;
  Chromosome firstChromosome;
  // 0 for the initial population.
  std::size_t firstIteration = 0;
};

struct GaRunResult {
  Chromosome bestChromosome;
  long bestFitness = 0;
  ScenarioPath bestPath;
  std::size_t iterationsRun = 0;
  std::vector<Scored> initialPopulation;
  std::vector<GaTraceRow> trace;
  // Discovery order; distinct by node sequence.
  std::vector<CoveredPath> coveredPaths;
  // Best-so-far fitness after the initial population and each iteration.
  std::vector<long> bestHistory;
};

GaRunResult run(const FlowGraph& graph, const WeightTable& weights,
                const ChromosomeLayout& layout, const GaConfig& cfg);

}  // namespace tcprio

#endif  // TCPRIO_GA_H_
