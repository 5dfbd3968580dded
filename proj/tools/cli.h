// Copyright 2026 The pguess Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Subcommands: pc, hcurve, bibo, vector, validate.
// JSON and CSV go to `out`, diagnostics to `err`.

#ifndef PGUESS_TOOLS_CLI_H_
#define PGUESS_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace pguess::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDomain = 3;
inline constexpr int kExitValidation = 4;
inline constexpr int kExitInternal = 5;

// `args[0]` is the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace pguess::cli

#endif  // PGUESS_TOOLS_CLI_H_
