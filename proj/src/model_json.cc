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

#include <set>

#include <json.hpp>

#include "tcprio/model.h"

namespace tcprio {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing \"" + key + "\"", 0, 0);
  return *it;
}

std::string require_string(const json& obj, const char* key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_string()) throw ParseError(where + ": \"" + key + "\" must be a string", 0, 0);
  return v.get<std::string>();
}

std::string optional_string(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return {};
  if (!it->is_string()) throw ParseError(where + ": \"" + key + "\" must be a string", 0, 0);
  return it->get<std::string>();
}

const json& optional_array(const json& obj, const char* key, const std::string& where) {
  static const json kEmpty = json::array();
  auto it = obj.find(key);
  if (it == obj.end()) return kEmpty;
  if (!it->is_array()) throw ParseError(where + ": \"" + key + "\" must be an array", 0, 0);
  return *it;
}

DiagramModel model_from_json(const json& obj, std::size_t index) {
  std::string where = "model #" + std::to_string(index + 1);
  if (!obj.is_object()) throw ParseError(where + ": expected an object", 0, 0);
  DiagramModel m;
  std::string kind = require_string(obj, "kind", where);
  auto mk = parse_model_kind(kind);
  if (!mk) throw ParseError(where + ": unknown model kind '" + kind + "'", 0, 0);
  m.kind = *mk;
  m.name = require_string(obj, "name", where);
  where = "model " + m.name;

  std::set<std::string> ids;
  for (const auto& n : optional_array(obj, "nodes", where)) {
    ModelNode node;
    node.id = NodeId(require_string(n, "id", where + " node"));
    std::string k = require_string(n, "kind", where + " node " + node.id.str());
    auto nk = parse_node_kind(k);
    if (!nk) throw ParseError(where + ": unknown node kind '" + k + "'", 0, 0);
    node.kind = *nk;
    node.label = optional_string(n, "label", where);
    if (!ids.insert(node.id.str()).second) {
      throw ParseError(where + ": duplicate node id '" + node.id.str() + "'", 0, 0);
    }
    m.nodes.push_back(std::move(node));
  }
  for (const auto& e : optional_array(obj, "edges", where)) {
    ModelTransition t;
    t.source = NodeId(require_string(e, "source", where + " edge"));
    t.target = NodeId(require_string(e, "target", where + " edge"));
    t.label = optional_string(e, "label", where);
    if (auto it = e.find("guard"); it != e.end() && !it->is_null()) {
      t.guard = optional_string(e, "guard", where);
    }
    m.transitions.push_back(std::move(t));
  }
  for (const auto& n : optional_array(obj, "nested", where)) {
    NodeId host(require_string(n, "node", where + " nested"));
    std::string sub = require_string(n, "model", where + " nested");
    if (!m.subActivities.emplace(host, sub).second) {
      throw ParseError(where + ": node '" + host.str() + "' already has a sub-activity", 0,
                       0);
    }
  }
  for (const auto& p : optional_array(obj, "pins", where)) {
    ComplexityPin pin;
    pin.node = NodeId(require_string(p, "node", where + " pin"));
    std::string metric = require_string(p, "metric", where + " pin");
    auto pm = parse_pinned_metric(metric);
    if (!pm) throw ParseError(where + ": pin metric must be 'stack' or 'if'", 0, 0);
    pin.metric = *pm;
    const json& v = require(p, "value", where + " pin");
    if (!v.is_number_integer() || v.get<long>() < 0) {
      throw ParseError(where + ": pin value must be a non-negative integer", 0, 0);
    }
    pin.value = v.get<long>();
    pin.note = optional_string(p, "note", where);
    m.pins.push_back(std::move(pin));
  }
  return m;
}

}  // namespace

ModelBundle parse_model_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), 0, 0);
  }
  const json* models = &doc;
  if (doc.is_object()) models = &require(doc, "models", "document");
  if (!models->is_array()) throw ParseError("expected an array of models", 0, 0);

  ModelBundle bundle;
  for (std::size_t i = 0; i < models->size(); ++i) {
    DiagramModel m = model_from_json((*models)[i], i);
    if (find_model(bundle, m.name)) {
      throw ParseError("duplicate model name '" + m.name + "'", 0, 0);
    }
    bundle.push_back(std::move(m));
  }
  return bundle;
}

std::string serialize_model_json(const ModelBundle& bundle) {
  ordered_json models = ordered_json::array();
  for (const auto& m : bundle) {
    ordered_json obj;
    obj["kind"] = to_string(m.kind);
    obj["name"] = m.name;
    obj["nodes"] = ordered_json::array();
    for (const auto& n : m.nodes) {
      ordered_json node{{"id", n.id.str()}, {"kind", to_string(n.kind)}};
      if (!n.label.empty()) node["label"] = n.label;
      obj["nodes"].push_back(std::move(node));
    }
    obj["edges"] = ordered_json::array();
    for (const auto& t : m.transitions) {
      ordered_json edge{{"source", t.source.str()}, {"target", t.target.str()}};
      if (!t.label.empty()) edge["label"] = t.label;
      if (t.guard) edge["guard"] = *t.guard;
      obj["edges"].push_back(std::move(edge));
    }
    obj["nested"] = ordered_json::array();
    for (const auto& [host, sub] : m.subActivities) {
      obj["nested"].push_back({{"node", host.str()}, {"model", sub}});
    }
    if (!m.pins.empty()) {
      obj["pins"] = ordered_json::array();
      for (const auto& p : m.pins) {
        ordered_json pin{{"node", p.node.str()},
                         {"metric", to_string(p.metric)},
                         {"value", p.value}};
        if (!p.note.empty()) pin["note"] = p.note;
        obj["pins"].push_back(std::move(pin));
      }
    }
    models.push_back(std::move(obj));
  }
  return ordered_json{{"models", std::move(models)}}.dump(2) + "\n";
}

}  // namespace tcprio
