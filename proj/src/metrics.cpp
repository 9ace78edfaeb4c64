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

#include "adaptnc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace adaptnc {

double global_coverage(std::span<const StepRecord> records) {
    if (records.empty()) throw EmptyRun("global_coverage: no records");
    std::size_t covered = 0;
    for (const auto& r : records) covered += r.covered ? 1 : 0;
    return static_cast<double>(covered) / static_cast<double>(records.size());
}

std::vector<double> local_coverage(std::span<const StepRecord> records,
                                   std::size_t window) {
    if (records.empty()) throw EmptyRun("local_coverage: no records");
    if (window > records.size())
        throw WindowTooLarge("local_coverage: window exceeds run length");

    const std::size_t n = records.size();
    std::vector<double> prefix(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        prefix[i + 1] = prefix[i] + (records[i].covered ? 1.0 : 0.0);

    const auto half = static_cast<long>(window / 2);
    std::vector<double> series(n);
    for (std::size_t t = 0; t < n; ++t) {
        const long lo = std::max<long>(0, static_cast<long>(t) - half + 1);
        const long hi = std::min<long>(static_cast<long>(n) - 1,
                                       static_cast<long>(t) + half);
        series[t] = (prefix[hi + 1] - prefix[lo]) / static_cast<double>(hi - lo + 1);
    }
    return series;
}

VolumeStats volume_stats(std::span<const StepRecord> records) {
    if (records.empty()) throw EmptyRun("volume_stats: no records");
    double volume_sum = 0.0;
    std::size_t volume_count = 0;
    std::size_t vacuous = 0;
    for (const auto& r : records) {
        if (r.vacuous) {
            ++vacuous;
            continue;
        }
        if (r.covered) {
            volume_sum += r.volume;
            ++volume_count;
        }
    }
    VolumeStats stats;
    stats.vacuous_fraction =
        static_cast<double>(vacuous) / static_cast<double>(records.size());
    stats.mean_volume_covered =
        volume_count > 0 ? volume_sum / static_cast<double>(volume_count)
                         : std::numeric_limits<double>::quiet_NaN();
    return stats;
}

RunSummary summarize(std::span<const StepRecord> records, std::size_t local_window) {
    RunSummary summary;
    summary.global_coverage = global_coverage(records);
    summary.local_coverage_series = local_coverage(records, local_window);
    const auto stats = volume_stats(records);
    summary.mean_volume_covered = stats.mean_volume_covered;
    summary.vacuous_fraction = stats.vacuous_fraction;

    const auto& series = summary.local_coverage_series;
    double mean = 0.0;
    for (double v : series) mean += v;
    mean /= static_cast<double>(series.size());
    double var = 0.0;
    for (double v : series) var += (v - mean) * (v - mean);
    var /= static_cast<double>(series.size());
    summary.local_mean = mean;
    summary.local_std = std::sqrt(var);
    return summary;
}

}  // namespace adaptnc
