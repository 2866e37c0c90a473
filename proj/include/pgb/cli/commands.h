// Copyright 2026 The PGB Authors
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

#ifndef PGB_CLI_COMMANDS_H_
#define PGB_CLI_COMMANDS_H_

#include <iosfwd>

namespace pgb::cli {

// Usage errors (unknown flags, missing arguments).
inline constexpr int kUsageExitCode = 64;

// Entry point of the `pgb` tool: parses arguments, runs one subcommand and
// returns the process exit code. Library errors map to ExitCodeFor(kind).
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace pgb::cli

#endif  // PGB_CLI_COMMANDS_H_
