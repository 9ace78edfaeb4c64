// Copyright 2026 The AdaptNC Authors
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

#include <span>
#include <vector>

#include "adaptnc/adaptnc.hpp"

namespace adaptnc {

/// Fraction of steps whose truth fell inside the emitted region. Vacuous
/// steps count as covered; they are excluded from volume means instead.
double global_coverage(std::span<const StepRecord> records);

/// Centered sliding-window coverage: mean of the indicators over
/// [t - w/2 + 1, t + w/2], truncated to the available half-windows at the
/// edges. Throws WindowTooLarge when w exceeds the run length.
std::vector<double> local_coverage(std::span<const StepRecord> records,
                                   std::size_t window);

struct VolumeStats {
    double mean_volume_covered = 0.0;  ///< NaN when no covered non-vacuous step
    double vacuous_fraction = 0.0;
};

VolumeStats volume_stats(std::span<const StepRecord> records);

struct RunSummary {
    double global_coverage = 0.0;
    double mean_volume_covered = 0.0;
    std::vector<double> local_coverage_series;
    double local_mean = 0.0;
    double local_std = 0.0;
    double vacuous_fraction = 0.0;
};

RunSummary summarize(std::span<const StepRecord> records, std::size_t local_window);

}  // namespace adaptnc
