// Copyright 2026 The Labelflow Authors.
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

#ifndef LABELFLOW_TOOLS_COMMANDS_H_
#define LABELFLOW_TOOLS_COMMANDS_H_

#include <ostream>
#include <span>
#include <string>

namespace labelflow::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInternal = 3;

// Runs one command line (args[0] is the program name). The JSON payload goes
// to `out`, diagnostics to `err`.
int RunCli(std::span<const std::string> args, std::ostream &out,
           std::ostream &err);

}  // namespace labelflow::cli

#endif  // LABELFLOW_TOOLS_COMMANDS_H_
