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

#ifndef TCPRIO_NODE_ID_H_
#define TCPRIO_NODE_ID_H_

#include <compare>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

namespace tcprio {

// Identifier of a node in a behavioral model or flow graph.
//
// Ordering is "natural": runs of digits compare numerically, so "9" < "10"
// and "9.2" < "9.10". Every "ascending id" rule in the library (decision
// field order, fork interleave, tie-breaks) uses this ordering.
class NodeId {
 public:
  NodeId() = default;
  NodeId(std::string value) : value_(std::move(value)) {}  // NOLINT
  NodeId(const char* value) : value_(value) {}             // NOLINT

  const std::string& str() const { return value_; }
  bool empty() const { return value_.empty(); }

  friend bool operator==(const NodeId& a, const NodeId& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const NodeId& a, const NodeId& b);

  friend std::ostream& operator<<(std::ostream& os, const NodeId& id) {
    return os << id.value_;
  }

 private:
  std::string value_;
};

// Natural comparison of two raw identifier strings.
std::strong_ordering natural_compare(std::string_view a, std::string_view b);

}  // namespace tcprio

template <>
struct std::hash<tcprio::NodeId> {
  std::size_t operator()(const tcprio::NodeId& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};

#endif  // TCPRIO_NODE_ID_H_
