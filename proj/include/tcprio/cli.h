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

#ifndef TCPRIO_CLI_H_
#define TCPRIO_CLI_H_

#include <iosfwd>

namespace tcprio::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kModelError = 2,
  kNoDecisionNodes = 3,
  kVerificationFailed = 4,
  kOracleBound = 5,
};

// Subcommands: analyze, prioritize, verify. Reports go to `out`, diagnostics
// to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tcprio::cli

#endif  // TCPRIO_CLI_H_
