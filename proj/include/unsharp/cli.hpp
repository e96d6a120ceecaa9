// Copyright 2026 The unsharp Authors
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

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace unsharp {

inline constexpr const char* kArtifactVersion = "0.1.0";

/// A named-column numeric table; one row per grid point.
struct OutputTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Shortest decimal text that parses back to exactly `value` (locale independent).
std::string format_number(double value);

/// Header row plus comma-separated rows, '\n' line endings.
std::string to_csv(const OutputTable& table);

/// Runs the command-line interface. `args` excludes the program name.
///
/// Exit codes: 0 success, 1 numerical or validation failure, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace unsharp
