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

#include "tcprio/model.h"

#include <algorithm>
#include <charconv>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>

namespace tcprio {
namespace {

constexpr std::pair<ModelKind, std::string_view> kModelKinds[] = {
    {ModelKind::Activity, "activity"},
    {ModelKind::StateChart, "statechart"},
};

constexpr std::pair<NodeKind, std::string_view> kNodeKinds[] = {
    {NodeKind::Initial, "initial"}, {NodeKind::Action, "action"},
    {NodeKind::Decision, "decision"}, {NodeKind::Merge, "merge"},
    {NodeKind::Fork, "fork"},       {NodeKind::Join, "join"},
    {NodeKind::State, "state"},     {NodeKind::Final, "final"},
};

constexpr std::pair<PinnedMetric, std::string_view> kMetrics[] = {
    {PinnedMetric::StackWeight, "stack"},
    {PinnedMetric::IfComplexity, "if"},
};

template <typename E, std::size_t N>
std::string_view name_of(const std::pair<E, std::string_view> (&table)[N], E value) {
  for (const auto& [v, name] : table) {
    if (v == value) return name;
  }
  return "?";
}

template <typename E, std::size_t N>
std::optional<E> value_of(const std::pair<E, std::string_view> (&table)[N],
                          std::string_view text) {
  for (const auto& [v, name] : table) {
    if (name == text) return v;
  }
  return std::nullopt;
}

struct Token {
  std::string text;
  int column = 0;
  bool quoted = false;
};

std::vector<Token> tokenize(std::string_view line, int line_no) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    if (c == '#') break;
    Token tok;
    tok.column = static_cast<int>(i) + 1;
    if (c == '"') {
      tok.quoted = true;
      ++i;
      bool closed = false;
      while (i < line.size()) {
        char q = line[i];
        if (q == '\\' && i + 1 < line.size()) {
          char e = line[i + 1];
          tok.text.push_back(e == 'n' ? '\n' : e);
          i += 2;
          continue;
        }
        if (q == '"') {
          closed = true;
          ++i;
          break;
        }
        tok.text.push_back(q);
        ++i;
      }
      if (!closed) throw ParseError("unterminated string", line_no, tok.column);
    } else {
      while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
             line[i] != '\r' && line[i] != '#' && line[i] != '"') {
        tok.text.push_back(line[i]);
        ++i;
      }
    }
    tokens.push_back(std::move(tok));
  }
  return tokens;
}

std::string quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

bool is_bare_word(std::string_view text) {
  if (text.empty()) return false;
  return std::none_of(text.begin(), text.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '"' || c == '#' || c == '\\' || c == '\n' ||
           c == '\r';
  });
}

class TextParser {
 public:
  explicit TextParser(std::string_view text) : text_(text) {}

  ModelBundle run() {
    std::size_t pos = 0;
    int line_no = 0;
    while (pos <= text_.size()) {
      std::size_t eol = text_.find('\n', pos);
      if (eol == std::string_view::npos) eol = text_.size();
      ++line_no;
      statement(tokenize(text_.substr(pos, eol - pos), line_no), line_no);
      pos = eol + 1;
    }
    if (current_) {
      throw ParseError("model '" + current_->name + "' is missing 'end'", line_no, 0);
    }
    return std::move(bundle_);
  }

 private:
  void statement(const std::vector<Token>& toks, int line_no) {
    if (toks.empty()) return;
    const Token& head = toks[0];
    if (head.quoted) throw ParseError("expected a keyword", line_no, head.column);
    const std::string& kw = head.text;
    if (kw == "model") {
      open_model(toks, line_no);
      return;
    }
    if (!current_) {
      throw ParseError("'" + kw + "' outside of a model block", line_no, head.column);
    }
    if (kw == "node") {
      node(toks, line_no);
    } else if (kw == "edge") {
      edge(toks, line_no);
    } else if (kw == "nested") {
      nested(toks, line_no);
    } else if (kw == "pin") {
      pin(toks, line_no);
    } else if (kw == "end") {
      expect_count(toks, 1, 1, line_no);
      bundle_.push_back(std::move(*current_));
      current_.reset();
      node_ids_.clear();
    } else {
      throw ParseError("unknown statement '" + kw + "'", line_no, head.column);
    }
  }

  void expect_count(const std::vector<Token>& toks, std::size_t min, std::size_t max,
                    int line_no) {
    if (toks.size() < min) {
      int col = toks.back().column + static_cast<int>(toks.back().text.size());
      throw ParseError("'" + toks[0].text + "' expects more arguments", line_no, col);
    }
    if (toks.size() > max) {
      throw ParseError("unexpected token '" + toks[max].text + "'", line_no,
                       toks[max].column);
    }
  }

  void open_model(const std::vector<Token>& toks, int line_no) {
    if (current_) {
      throw ParseError("nested 'model' before 'end' of '" + current_->name + "'", line_no,
                       toks[0].column);
    }
    expect_count(toks, 3, 3, line_no);
    auto kind = parse_model_kind(toks[1].text);
    if (!kind) {
      throw ParseError("unknown model kind '" + toks[1].text + "'", line_no,
                       toks[1].column);
    }
    if (find_model(bundle_, toks[2].text)) {
      throw ParseError("duplicate model name '" + toks[2].text + "'", line_no,
                       toks[2].column);
    }
    current_.emplace();
    current_->kind = *kind;
    current_->name = toks[2].text;
  }

  void node(const std::vector<Token>& toks, int line_no) {
    expect_count(toks, 3, 4, line_no);
    auto kind = parse_node_kind(toks[2].text);
    if (!kind) {
      throw ParseError("unknown node kind '" + toks[2].text + "'", line_no,
                       toks[2].column);
    }
    if (!node_ids_.insert(toks[1].text).second) {
      throw ParseError("duplicate node id '" + toks[1].text + "'", line_no,
                       toks[1].column);
    }
    ModelNode n;
    n.id = NodeId(toks[1].text);
    n.kind = *kind;
    if (toks.size() == 4) n.label = toks[3].text;
    current_->nodes.push_back(std::move(n));
  }

  void edge(const std::vector<Token>& toks, int line_no) {
    expect_count(toks, 4, 8, line_no);
    if (toks[2].text != "->" || toks[2].quoted) {
      throw ParseError("expected '->'", line_no, toks[2].column);
    }
    ModelTransition t;
    t.source = NodeId(toks[1].text);
    t.target = NodeId(toks[3].text);
    std::size_t i = 4;
    while (i < toks.size()) {
      const Token& key = toks[i];
      if (i + 1 >= toks.size()) {
        throw ParseError("'" + key.text + "' expects a value", line_no, key.column);
      }
      if (key.text == "on" && !key.quoted && t.label.empty()) {
        t.label = toks[i + 1].text;
      } else if (key.text == "when" && !key.quoted && !t.guard) {
        t.guard = toks[i + 1].text;
      } else {
        throw ParseError("unexpected token '" + key.text + "'", line_no, key.column);
      }
      i += 2;
    }
    current_->transitions.push_back(std::move(t));
  }

  void nested(const std::vector<Token>& toks, int line_no) {
    expect_count(toks, 3, 3, line_no);
    NodeId host(toks[1].text);
    if (!current_->subActivities.emplace(host, toks[2].text).second) {
      throw ParseError("node '" + toks[1].text + "' already has a sub-activity", line_no,
                       toks[1].column);
    }
  }

  void pin(const std::vector<Token>& toks, int line_no) {
    expect_count(toks, 4, 5, line_no);
    auto metric = parse_pinned_metric(toks[2].text);
    if (!metric) {
      throw ParseError("pin metric must be 'stack' or 'if'", line_no, toks[2].column);
    }
    long value = 0;
    const std::string& v = toks[3].text;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), value);
    if (ec != std::errc() || ptr != v.data() + v.size() || value < 0) {
      throw ParseError("pin value must be a non-negative integer", line_no,
                       toks[3].column);
    }
    ComplexityPin p;
    p.node = NodeId(toks[1].text);
    p.metric = *metric;
    p.value = value;
    if (toks.size() == 5) p.note = toks[4].text;
    current_->pins.push_back(std::move(p));
  }

  std::string_view text_;
  ModelBundle bundle_;
  std::optional<DiagramModel> current_;
  std::set<std::string> node_ids_;
};

std::string describe(const ModelTransition& t) {
  return "edge " + t.source.str() + " -> " + t.target.str();
}

void resolve_into(const DiagramModel& model, const ModelBundle& bundle,
                  std::vector<std::string>& stack, ResolvedModel& out) {
  out.model = model;
  stack.push_back(model.name);
  for (const auto& [host, sub_name] : model.subActivities) {
    if (std::find(stack.begin(), stack.end(), sub_name) != stack.end()) {
      std::string chain;
      for (const auto& s : stack) chain += s + " -> ";
      throw NestingCycleError("cyclic nesting: " + chain + sub_name);
    }
    const DiagramModel* sub = find_model(bundle, sub_name);
    if (!sub) {
      throw std::invalid_argument("node " + host.str() + " of " + model.name +
                                  " references missing sub-activity '" + sub_name + "'");
    }
    auto resolved = std::make_shared<ResolvedModel>();
    resolve_into(*sub, bundle, stack, *resolved);
    out.nested.emplace(host, std::move(resolved));
  }
  stack.pop_back();
}

}  // namespace

std::string_view to_string(ModelKind kind) { return name_of(kModelKinds, kind); }
std::string_view to_string(NodeKind kind) { return name_of(kNodeKinds, kind); }
std::string_view to_string(PinnedMetric metric) { return name_of(kMetrics, metric); }

std::optional<ModelKind> parse_model_kind(std::string_view text) {
  return value_of(kModelKinds, text);
}
std::optional<NodeKind> parse_node_kind(std::string_view text) {
  return value_of(kNodeKinds, text);
}
std::optional<PinnedMetric> parse_pinned_metric(std::string_view text) {
  return value_of(kMetrics, text);
}

const ModelNode* DiagramModel::find_node(const NodeId& id) const {
  auto it = std::find_if(nodes.begin(), nodes.end(),
                         [&](const ModelNode& n) { return n.id == id; });
  return it == nodes.end() ? nullptr : &*it;
}

const DiagramModel* find_model(const ModelBundle& bundle, std::string_view name) {
  auto it = std::find_if(bundle.begin(), bundle.end(),
                         [&](const DiagramModel& m) { return m.name == name; });
  return it == bundle.end() ? nullptr : &*it;
}

ParseError::ParseError(const std::string& message, int line, int column)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) +
                                        (column > 0 ? ":" + std::to_string(column) : "") +
                                        ": " + message
                                  : message),
      line_(line),
      column_(column) {}

ModelBundle parse_model(std::string_view text) { return TextParser(text).run(); }

ModelBundle load_model_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open model file '" + path.string() + "'", 0, 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (path.extension() == ".json") return parse_model_json(buf.str());
  return parse_model(buf.str());
}

std::string serialize_model(const ModelBundle& bundle) {
  std::ostringstream os;
  for (std::size_t m = 0; m < bundle.size(); ++m) {
    const DiagramModel& model = bundle[m];
    if (m > 0) os << '\n';
    os << "model " << to_string(model.kind) << ' ' << model.name << '\n';
    for (const auto& n : model.nodes) {
      os << "  node " << n.id << ' ' << to_string(n.kind);
      if (!n.label.empty()) os << ' ' << quote(n.label);
      os << '\n';
    }
    for (const auto& t : model.transitions) {
      os << "  edge " << t.source << " -> " << t.target;
      if (!t.label.empty()) {
        os << " on " << (is_bare_word(t.label) ? t.label : quote(t.label));
      }
      if (t.guard) os << " when " << quote(*t.guard);
      os << '\n';
    }
    for (const auto& [host, sub] : model.subActivities) {
      os << "  nested " << host << ' ' << sub << '\n';
    }
    for (const auto& p : model.pins) {
      os << "  pin " << p.node << ' ' << to_string(p.metric) << ' ' << p.value;
      if (!p.note.empty()) os << ' ' << quote(p.note);
      os << '\n';
    }
    os << "end\n";
  }
  return os.str();
}

bool has_errors(const ValidationReport& report) {
  return std::any_of(report.begin(), report.end(),
                     [](const Finding& f) { return f.severity == Severity::Error; });
}

ValidationReport validate_model(const DiagramModel& model, const ModelBundle& bundle) {
  ValidationReport report;
  auto error = [&](std::string where, std::string what) {
    report.push_back({Severity::Error, model.name + ": " + std::move(where), std::move(what)});
  };
  auto warn = [&](std::string where, std::string what) {
    report.push_back({Severity::Warning, model.name + ": " + std::move(where), std::move(what)});
  };

  std::set<NodeId> ids;
  int initials = 0;
  int finals = 0;
  for (const auto& n : model.nodes) {
    if (!ids.insert(n.id).second) error("node " + n.id.str(), "duplicate node id");
    if (n.kind == NodeKind::Initial) ++initials;
    if (n.kind == NodeKind::Final) ++finals;
    bool activity_only = n.kind == NodeKind::Action || n.kind == NodeKind::Fork ||
                         n.kind == NodeKind::Join;
    if (model.kind == ModelKind::StateChart && activity_only) {
      error("node " + n.id.str(),
            "kind '" + std::string(to_string(n.kind)) + "' is not allowed in a state chart");
    }
    if (model.kind == ModelKind::Activity && n.kind == NodeKind::State) {
      error("node " + n.id.str(), "kind 'state' is not allowed in an activity model");
    }
  }
  if (initials != 1) {
    error("model", "expected exactly one initial node, found " + std::to_string(initials));
  }
  if (finals < 1) error("model", "expected at least one final node");

  std::map<NodeId, std::vector<const ModelTransition*>> outgoing;
  std::map<NodeId, int> incoming;
  for (const auto& t : model.transitions) {
    bool ok = true;
    if (!ids.count(t.source)) {
      error(describe(t), "unknown source node '" + t.source.str() + "'");
      ok = false;
    }
    if (!ids.count(t.target)) {
      error(describe(t), "unknown target node '" + t.target.str() + "'");
      ok = false;
    }
    if (!ok) continue;
    outgoing[t.source].push_back(&t);
    if (t.source != t.target) ++incoming[t.target];
  }

  for (const auto& n : model.nodes) {
    const auto& outs = outgoing[n.id];
    if (n.kind == NodeKind::Initial && incoming[n.id] > 0) {
      error("node " + n.id.str(), "initial node has incoming transitions");
    }
    if (n.kind == NodeKind::Final && !outs.empty()) {
      error("node " + n.id.str(), "final node has outgoing transitions");
    }
    bool labelled_choice = n.kind == NodeKind::Decision || n.kind == NodeKind::State ||
                           (model.kind == ModelKind::StateChart && outs.size() > 1);
    if (labelled_choice) {
      std::set<std::string> labels;
      for (const auto* t : outs) {
        if (!labels.insert(t->label).second) {
          error("node " + n.id.str(),
                "outgoing transitions share the label '" + t->label + "'");
        }
      }
    }
    if (n.kind == NodeKind::Decision && outs.size() < 2) {
      error("node " + n.id.str(), "decision node needs at least two outgoing transitions");
    }
    if (model.kind == ModelKind::Activity && outs.size() > 1 &&
        n.kind != NodeKind::Decision && n.kind != NodeKind::Fork) {
      warn("node " + n.id.str(),
           "multiple outgoing transitions on a non-decision node; only the first is "
           "followed");
    }
  }

  for (const auto& [host, sub] : model.subActivities) {
    const ModelNode* n = model.find_node(host);
    if (!n) {
      error("nested " + host.str(), "sub-activity host node does not exist");
    } else if (n->kind != NodeKind::Action) {
      error("nested " + host.str(), "only action nodes may carry a sub-activity");
    }
    if (!find_model(bundle, sub)) {
      error("nested " + host.str(), "sub-activity model '" + sub + "' is not in the bundle");
    } else if (sub == model.name) {
      error("nested " + host.str(), "model nests itself");
    }
  }

  std::set<std::pair<NodeId, PinnedMetric>> pinned;
  for (const auto& p : model.pins) {
    if (!ids.count(p.node)) error("pin " + p.node.str(), "pinned node does not exist");
    if (!pinned.insert({p.node, p.metric}).second) {
      error("pin " + p.node.str(), "metric pinned twice");
    }
  }

  // Reachability from the initial node.
  auto init = std::find_if(model.nodes.begin(), model.nodes.end(),
                           [](const ModelNode& n) { return n.kind == NodeKind::Initial; });
  if (initials == 1) {
    std::set<NodeId> seen{init->id};
    std::deque<NodeId> queue{init->id};
    while (!queue.empty()) {
      NodeId cur = queue.front();
      queue.pop_front();
      for (const auto* t : outgoing[cur]) {
        if (seen.insert(t->target).second) queue.push_back(t->target);
      }
    }
    for (const auto& n : model.nodes) {
      if (!seen.count(n.id)) {
        error("node " + n.id.str(), "unreachable from the initial node");
      }
    }
  }
  return report;
}

ResolvedModel resolve_nested(const DiagramModel& model, const ModelBundle& bundle) {
  ResolvedModel out;
  std::vector<std::string> stack;
  resolve_into(model, bundle, stack, out);
  return out;
}

}  // namespace tcprio
