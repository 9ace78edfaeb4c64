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

#include "adaptnc/config.hpp"
#include "adaptnc/metrics.hpp"

namespace adaptnc {

/// Shortest round-trip-exact decimal rendering; infinities spell "inf".
std::string format_double(double value);

/// Writes via a temp file in the same directory plus an atomic rename.
void write_file_atomic(const std::string& path, const std::string& content);

std::string steps_csv(const std::string& env, const std::string& method,
                      std::uint64_t seed, const RunResult& result);
std::string weights_csv(const RunResult& result);
std::string summary_json(const std::string& env, const std::string& method,
                         std::uint64_t seed, const RunResult& result,
                         const RunSummary& summary);

/// out/<env>_<method>_seed<seed>{_steps.csv,_weights.csv,_summary.json}
std::string run_basename(const std::string& env, const std::string& method,
                         std::uint64_t seed);

/// Executes one (method, seed) cell of an experiment and writes its three
/// output files. Returns the summary path.
std::string execute_run(const ExperimentConfig& config, BaselineKind method,
                        std::uint64_t seed);

}  // namespace adaptnc
