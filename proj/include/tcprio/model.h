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

#ifndef TCPRIO_MODEL_H_
#define TCPRIO_MODEL_H_

// Behavioral model IR: activity diagrams and state charts as parsed from the
// line-oriented model format (or its JSON equivalent).
//
// Text form, one statement per line, `#` starts a comment:
//
//   model <activity|statechart> <name>
//     node <id> <kind> ["label"]
//     edge <src> -> <dst> [on <label>] [when "guard"]
//     nested <node-id> <model-name>
//     pin <node-id> <stack|if> <value> ["note"]
//   end
//
// `pin` fixes a published complexity value for one node where the published
// value cannot be derived from the drawn topology; the computed value is kept
// alongside it and reports flag the cell.

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tcprio/node_id.h"

namespace tcprio {

enum class ModelKind { Activity, StateChart };

enum class NodeKind { Initial, Action, Decision, Merge, Fork, Join, State, Final };

enum class PinnedMetric { StackWeight, IfComplexity };

std::string_view to_string(ModelKind kind);
std::string_view to_string(NodeKind kind);
std::string_view to_string(PinnedMetric metric);
std::optional<ModelKind> parse_model_kind(std::string_view text);
std::optional<NodeKind> parse_node_kind(std::string_view text);
std::optional<PinnedMetric> parse_pinned_metric(std::string_view text);

struct ModelNode {
  NodeId id;
  NodeKind kind = NodeKind::Action;
  std::string label;

  friend bool operator==(const ModelNode&, const ModelNode&) = default;
};

struct ModelTransition {
  NodeId source;
  NodeId target;
  // Guard outcome ("yes"/"no") or event name ("e5"); may be empty.
  std::string label;
  std::optional<std::string> guard;

  friend bool operator==(const ModelTransition&, const ModelTransition&) = default;
};

struct ComplexityPin {
  NodeId node;
  PinnedMetric metric = PinnedMetric::IfComplexity;
  long value = 0;
  std::string note;

  friend bool operator==(const ComplexityPin&, const ComplexityPin&) = default;
};

struct DiagramModel {
  ModelKind kind = ModelKind::Activity;
  std::string name;
  std::vector<ModelNode> nodes;
  std::vector<ModelTransition> transitions;
  // Activity node id -> name of the model holding its sub-activity.
  std::map<NodeId, std::string> subActivities;
  std::vector<ComplexityPin> pins;

  const ModelNode* find_node(const NodeId& id) const;

  friend bool operator==(const DiagramModel&, const DiagramModel&) = default;
};

// All models of one input file, in declaration order.
using ModelBundle = std::vector<DiagramModel>;

const DiagramModel* find_model(const ModelBundle& bundle, std::string_view name);

// Thrown for malformed input. line/column are 1-based; 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Parses the line-oriented text form.
ModelBundle parse_model(std::string_view text);

// Parses the structured JSON form: either an array of model objects or an
// object with a "models" array. Each model object carries "kind", "name",
// "nodes", "edges" and optional "nested" and "pins" arrays.
ModelBundle parse_model_json(std::string_view text);

// Dispatches on extension: ".json" selects the JSON form.
ModelBundle load_model_file(const std::filesystem::path& path);

std::string serialize_model(const ModelBundle& bundle);
std::string serialize_model_json(const ModelBundle& bundle);

enum class Severity { Warning, Error };

struct Finding {
  Severity severity = Severity::Error;
  std::string location;
  std::string message;
};

using ValidationReport = std::vector<Finding>;

bool has_errors(const ValidationReport& report);

// Checks every DiagramModel invariant; findings are data, never thrown.
ValidationReport validate_model(const DiagramModel& model, const ModelBundle& bundle);

class NestingCycleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A model with each sub-activity reference bound to its resolved sub-model.
struct ResolvedModel {
  DiagramModel model;
  std::map<NodeId, std::shared_ptr<const ResolvedModel>> nested;
};

// Binds sub-activity references recursively. Throws NestingCycleError when a
// model (transitively) nests itself and std::invalid_argument when a
// reference does not resolve.
ResolvedModel resolve_nested(const DiagramModel& model, const ModelBundle& bundle);

}  // namespace tcprio

#endif  // TCPRIO_MODEL_H_
