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

#ifndef TCPRIO_RANDOM_H_
#define TCPRIO_RANDOM_H_

// Seedable random stream with platform-independent output. std::mt19937_64
// is bit-exact across standard libraries; the std distributions are not, so
// the conversions are done here.

#include <cstdint>
#include <random>
#include <stdexcept>

namespace tcprio {

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1) with 53 bits of precision.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi], rejection sampled.
  std::uint64_t integer(std::uint64_t lo, std::uint64_t hi) {
    if (hi < lo) throw std::invalid_argument("empty integer range");
    const std::uint64_t span = hi - lo;
    if (span == UINT64_MAX) return next();
    const std::uint64_t n = span + 1;
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % n + 1) % n;
    std::uint64_t x;
    do {
      x = next();
    } while (x > limit);
    return lo + x % n;
  }

  bool coin() { return (next() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tcprio

#endif  // TCPRIO_RANDOM_H_
