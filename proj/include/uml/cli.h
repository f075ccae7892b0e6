// Copyright 2026 The UML Authors
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


#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace uml::cli {

/// Exit code for command-line usage errors (unknown flags, missing values).
inline constexpr int kUsageExit = 2;
/// Exit code for anything that is not a uml::Error.
inline constexpr int kInternalExit = 1;

/// Runs one subcommand. args[0] is the program name. Data goes to `out`,
/// logs and machine-readable errors to `err`. Library errors exit with
/// their ErrorCode value.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace uml::cli
