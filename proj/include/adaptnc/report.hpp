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

#include <string>
#include <vector>

namespace adaptnc {

struct SummaryRecord {
    std::string env;
    std::string method;
    std::uint64_t seed = 0;
    std::size_t steps = 0;
    double global_coverage = 0.0;
    double mean_volume_covered = 0.0;
    double local_mean = 0.0;
    double local_std = 0.0;
    double vacuous_fraction = 0.0;
    std::string stream_checksum;
};

std::vector<SummaryRecord> load_summaries(const std::string& directory);

/// Aggregates per-run summaries into a coverage/volume table per environment
/// plus a vacuous-coverage table. Every environment present must have runs
/// for all four methods; gaps raise MissingRuns naming the absent cells.
std::string make_report(const std::vector<SummaryRecord>& summaries);

}  // namespace adaptnc
