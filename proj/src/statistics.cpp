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

#include "unsharp/statistics.hpp"

#include <cmath>

namespace unsharp {

Summary summarize(std::span<const double> samples) {
  if (samples.empty()) throw InvalidInput("cannot summarize an empty sample");
  Summary out;
  out.samples = samples.size();
  double sum = 0.0;
  for (double x : samples) sum += x;
  out.mean = sum / static_cast<double>(samples.size());
  if (samples.size() == 1) {
    out.degenerate = true;
    return out;
  }
  double squares = 0.0;
  for (double x : samples) squares += (x - out.mean) * (x - out.mean);
  const double n = static_cast<double>(samples.size());
  out.std_error = std::sqrt(squares / (n - 1.0) / n);
  return out;
}

FidelityStatistic to_fidelity_statistic(const Summary& summary) {
  return {summary.mean, summary.std_error, summary.samples};
}

unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hardware = std::thread::hardware_concurrency();
  return hardware > 0 ? hardware : 1;
}

}  // namespace unsharp
