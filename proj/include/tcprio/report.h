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

#ifndef TCPRIO_REPORT_H_
#define TCPRIO_REPORT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tcprio/complexity.h"
#include "tcprio/encoding.h"
#include "tcprio/ga.h"
#include "tcprio/oracle.h"

namespace tcprio {

enum class ReportFormat { Text, Json, Csv };

// Throws std::invalid_argument.
ReportFormat parse_report_format(std::string_view s);

struct RankedScenario {
  ScenarioPath path;
  Chromosome chromosome;
  bool aliased = false;
  std::size_t firstIteration = 0;
};

struct SweepSummary {
  std::uint64_t firstSeed = 0;
  std::size_t runs = 0;
  std::size_t optimumFound = 0;
  double minRate = 0.0;
  long worstGap = 0;
  double rate() const {
    return runs == 0 ? 0.0 : static_cast<double>(optimumFound) / static_cast<double>(runs);
  }
  bool passed() const { return rate() >= minRate; }
};

struct RunReport {
  std::string modelName;
  ModelKind modelKind = ModelKind::Activity;
  WeightTable weights;
  std::string layout;
  GaConfig config;
  std::size_t iterationsRun = 0;
  // Descending fitness, ties by chromosome; the first is the GA best.
  std::vector<RankedScenario> scenarios;
  std::vector<Scored> initialPopulation;
  std::vector<GaTraceRow> trace;
  std::optional<VerificationReport> verification;
  std::optional<SweepSummary> sweep;
  std::vector<std::string> notices;
};

RunReport make_run_report(const DiagramModel& model, const WeightTable& weights,
                          const ChromosomeLayout& layout, const GaConfig& cfg,
                          const GaRunResult& result);

// Plain CSV, header row first. Multi-section reports prefix each block with
// a "# name" line.
std::string weights_csv(const WeightTable& table);
std::string trace_csv(const std::vector<GaTraceRow>& trace);
std::string oracle_csv(const OracleResult& oracle);

std::string render_weights(const WeightTable& table, ModelKind kind, ReportFormat format);
std::string render_run(const RunReport& report, ReportFormat format);

}  // namespace tcprio

#endif  // TCPRIO_REPORT_H_
