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

#include "tcprio/ga.h"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace tcprio {

void validate(const GaConfig& cfg, const ChromosomeLayout& layout) {
  auto prob_ok = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!prob_ok(cfg.crossoverProb)) throw std::invalid_argument("crossover probability outside [0,1]");
  if (!prob_ok(cfg.mutationProb)) throw std::invalid_argument("mutation probability outside [0,1]");
  if (cfg.populationSize < 2 || cfg.populationSize % 2 != 0) {
    throw std::invalid_argument("population size must be even and at least 2");
  }
  if (cfg.initialPopulation.size() > cfg.populationSize) {
    throw std::invalid_argument("initial population has " +
                                std::to_string(cfg.initialPopulation.size()) +
                                " chromosomes for a population of " +
                                std::to_string(cfg.populationSize));
  }
  for (const Chromosome& c : cfg.initialPopulation) {
    if (c.size() != layout.total_bits()) {
      throw std::invalid_argument("initial chromosome " + c.str() + " is not " +
                                  std::to_string(layout.total_bits()) + " bits");
    }
  }
}

std::vector<Chromosome> init_population(const ChromosomeLayout& layout, const GaConfig& cfg,
                                        RandomStream& rng) {
  std::vector<Chromosome> pop = cfg.initialPopulation;
  while (pop.size() < cfg.populationSize) {
    std::string bits(layout.total_bits(), '0');
    for (char& b : bits) b = rng.coin() ? '1' : '0';
    pop.emplace_back(std::move(bits));
  }
  return pop;
}

std::vector<Scored> select(std::vector<Scored> population) {
  std::stable_sort(population.begin(), population.end(), [](const Scored& a, const Scored& b) {
    if (a.fitness != b.fitness) return a.fitness > b.fitness;
    return a.chromosome < b.chromosome;
  });
  return population;
}

std::pair<Chromosome, Chromosome> crossover_at(const Chromosome& a, const Chromosome& b,
                                               std::size_t cut) {
  if (a.size() != b.size()) throw std::invalid_argument("crossover of unequal lengths");
  if (cut > a.size()) throw std::out_of_range("crossover cut beyond chromosome");
  const std::string& x = a.str();
  const std::string& y = b.str();
  return {Chromosome(x.substr(0, cut) + y.substr(cut)),
          Chromosome(y.substr(0, cut) + x.substr(cut))};
}

CrossoverOutcome crossover(const Chromosome& a, const Chromosome& b, RandomStream& rng,
                           const GaConfig& cfg) {
  CrossoverOutcome out{a, b, rng.uniform(), std::nullopt};
  if (out.r < cfg.crossoverProb && a.size() > 1) {
    std::size_t cut = rng.integer(1, a.size() - 1);
    auto [x, y] = crossover_at(a, b, cut);
    out.first = std::move(x);
    out.second = std::move(y);
    out.cut = cut;
  }
  return out;
}

Chromosome flip_bit(const Chromosome& c, std::size_t index) {
  if (index >= c.size()) throw std::out_of_range("bit index beyond chromosome");
  return c.with_flipped(c.size() - 1 - index);
}

MutationOutcome mutate(const Chromosome& c, RandomStream& rng, const GaConfig& cfg) {
  MutationOutcome out{c, rng.uniform(), std::nullopt};
  if (out.r < cfg.mutationProb) {
    std::size_t bit = rng.integer(0, c.size() - 1);
    out.result = flip_bit(c, bit);
    out.flippedBit = bit;
  }
  return out;
}

namespace {

class Evaluator {
 public:
  Evaluator(const FlowGraph& g, const WeightTable& w, const ChromosomeLayout& l)
      : decoder_(g, l), weights_(w) {}

  const ScenarioPath& operator()(const Chromosome& c) {
    auto it = cache_.find(c);
    if (it == cache_.end()) it = cache_.emplace(c, decoder_.evaluate(c, weights_)).first;
    return it->second;
  }

 private:
  PathDecoder decoder_;
  const WeightTable& weights_;
  std::map<Chromosome, ScenarioPath> cache_;
};

}  // namespace

GaRunResult run(const FlowGraph& graph, const WeightTable& weights,
                const ChromosomeLayout& layout, const GaConfig& cfg) {
  validate(cfg, layout);
  RandomStream rng(cfg.seed);
  Evaluator eval(graph, weights, layout);
  GaRunResult result;
  std::set<std::vector<NodeId>> seen;

  bool have_best = false;
  auto observe = [&](const Chromosome& c, std::size_t iteration) -> long {
    const ScenarioPath& p = eval(c);
    if (seen.insert(p.nodes).second) result.coveredPaths.push_back({p, c, iteration});
    if (!have_best || p.fitness > result.bestFitness) {
      have_best = true;
      result.bestFitness = p.fitness;
      result.bestChromosome = c;
      result.bestPath = p;
    }
    return p.fitness;
  };

  std::vector<Scored> pop;
  for (Chromosome& c : init_population(layout, cfg, rng)) {
    long f = observe(c, 0);
    pop.push_back({std::move(c), f});
  }
  result.initialPopulation = pop;
  result.bestHistory.push_back(result.bestFitness);

  auto done = [&] {
    if (cfg.targetPathCount && result.coveredPaths.size() >= *cfg.targetPathCount) return true;
    if (cfg.stopOnUniform && cfg.elitism) {
      return std::all_of(pop.begin(), pop.end(),
                         [&](const Scored& s) { return s.chromosome == pop.front().chromosome; });
    }
    return false;
  };

  for (std::size_t it = 1; it <= cfg.maxIterations && !done(); ++it) {
    std::vector<Scored> ranked = select(pop);
    std::vector<GaTraceRow> rows(ranked.size());
    for (std::size_t i = 0; i + 1 < ranked.size(); i += 2) {
      CrossoverOutcome co = crossover(ranked[i].chromosome, ranked[i + 1].chromosome, rng, cfg);
      rows[i].c = co.first;
      rows[i + 1].c = co.second;
      for (std::size_t k : {i, i + 1}) {
        rows[k].r = co.r;
        rows[k].cut = co.cut;
      }
    }
    for (std::size_t i = 0; i < ranked.size(); ++i) {
      GaTraceRow& row = rows[i];
      row.iteration = it;
      row.rank = i + 1;
      row.x = ranked[i].chromosome;
      row.fx = ranked[i].fitness;
      MutationOutcome mo = mutate(row.c, rng, cfg);
      row.mutationR = mo.r;
      row.flippedBit = mo.flippedBit;
      row.m = mo.result;
      row.fPrime = observe(row.m, it);
      row.survivor = row.m;
      row.survivorFitness = row.fPrime;
    }

    if (cfg.elitism) {
      const Scored& prev_best = ranked.front();
      auto best_child = std::max_element(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        return a.fPrime < b.fPrime;
      });
      if (best_child->fPrime < prev_best.fitness) {
        std::size_t worst = 0;
        for (std::size_t i = 1; i < rows.size(); ++i) {
          if (rows[i].fPrime <= rows[worst].fPrime) worst = i;
        }
        rows[worst].elite = true;
        rows[worst].survivor = prev_best.chromosome;
        rows[worst].survivorFitness = prev_best.fitness;
      }
    }

    pop.clear();
    for (GaTraceRow& row : rows) {
      pop.push_back({row.survivor, row.survivorFitness});
      result.trace.push_back(std::move(row));
    }
    result.iterationsRun = it;
    result.bestHistory.push_back(result.bestFitness);
  }
  return result;
}

}  // namespace tcprio
