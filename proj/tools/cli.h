// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FAIRSEL_TOOLS_CLI_H_
#define FAIRSEL_TOOLS_CLI_H_

#include <ostream>

namespace fairsel::cli {

// Exit codes of the fairsel tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;       // bad flags, unreadable input
inline constexpr int kExitInfeasible = 2;  // select found no feasible point

// Entry point of the `fairsel` binary: verbs select, experiment, metrics and
// gen. Output goes to `out`, diagnostics to `err`.
int Run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace fairsel::cli

#endif  // FAIRSEL_TOOLS_CLI_H_
