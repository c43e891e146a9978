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

#include "tcprio/node_id.h"

#include <cctype>

namespace tcprio {
namespace {

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

std::string_view digit_run(std::string_view s, std::size_t& pos) {
  std::size_t start = pos;
  while (pos < s.size() && is_digit(s[pos])) ++pos;
  return s.substr(start, pos - start);
}

std::string_view text_run(std::string_view s, std::size_t& pos) {
  std::size_t start = pos;
  while (pos < s.size() && !is_digit(s[pos])) ++pos;
  return s.substr(start, pos - start);
}

std::strong_ordering compare_numeric(std::string_view a, std::string_view b) {
  while (a.size() > 1 && a.front() == '0') a.remove_prefix(1);
  while (b.size() > 1 && b.front() == '0') b.remove_prefix(1);
  if (a.size() != b.size()) return a.size() <=> b.size();
  return a.compare(b) <=> 0;
}

}  // namespace

std::strong_ordering natural_compare(std::string_view a, std::string_view b) {
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    bool da = is_digit(a[i]);
    bool db = is_digit(b[j]);
    if (da && db) {
      auto c = compare_numeric(digit_run(a, i), digit_run(b, j));
      if (c != 0) return c;
    } else if (!da && !db) {
      auto c = text_run(a, i).compare(text_run(b, j)) <=> 0;
      if (c != 0) return c;
    } else {
      // Digits sort before text.
      return da ? std::strong_ordering::less : std::strong_ordering::greater;
    }
  }
  if (i < a.size() || j < b.size()) {
    return (a.size() - i) <=> (b.size() - j);
  }
  // Equal under natural ordering ("01" vs "1"): fall back to raw bytes.
  return a.compare(b) <=> 0;
}

std::strong_ordering operator<=>(const NodeId& a, const NodeId& b) {
  return natural_compare(a.value_, b.value_);
}

}  // namespace tcprio
