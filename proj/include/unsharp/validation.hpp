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

#include <cstdint>
#include <string>
#include <vector>

namespace unsharp {

struct ValidationOptions {
  std::vector<double> precisions{0.1, 1.0, 10.0};
  bool quick = false;
  std::uint64_t seed = 20240601;
  /// Fault injection for sensitivity testing: multiplies the stochastic terms
  /// on the second route of each dual-route check (matrix-form SME noise, the
  /// replay's measurement precision, the drift-check SDE noise). 1 = healthy.
  double injected_noise_scale = 1.0;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double threshold = 0.0;
};

/// Fast invariant battery: POVM completeness, Kraus spectral match,
/// Bloch-vs-matrix SME agreement, closed-form identities, drift dominance.
std::vector<CheckResult> run_validation(const ValidationOptions& options);

}  // namespace unsharp
