// Copyright 2026 The urate Authors.
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

#ifndef URATE_TOOLS_CLI_H_
#define URATE_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

#include "urate/curves.h"

namespace urate::cli {

// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitError = 2;

// Runs one command line (args[0] is the program name). Artifacts go to out
// or to files under --out; error records go to err.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// Reads the CSV written by CurveToCsv.
LearningCurve ParseCurveCsv(const std::string& text);

}  // namespace urate::cli

#endif  // URATE_TOOLS_CLI_H_
