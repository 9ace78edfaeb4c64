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

#include "adaptnc/adaptnc.hpp"

namespace adaptnc {

enum class BaselineKind { split_cp, dtaci_fixed, adaptnc_no_replay, adaptnc };

std::string to_string(BaselineKind kind);
BaselineKind parse_baseline(const std::string& name);

/// Split conformal prediction: theta_0 and the threshold are fit on the
/// calibration prefix and frozen. The threshold is the conservative
/// ceil((n+1)(1-alpha))-th smallest calibration score; throws
/// InsufficientCalibration when that index exceeds n.
RunResult split_cp_run(envs::Stream& stream, double alpha, std::size_t calibration,
                       const McKdeConfig& kde_config, std::uint64_t seed);

/// Threshold-only DtACI: the adaptive run with score adaptation disabled
/// (theta = theta_0 forever). Shares the adaptive code path byte for byte.
RunResult dtaci_fixed_run(envs::Stream& stream, const AdaptncConfig& config,
                          std::uint64_t seed);

/// Dispatch by method; adaptnc_no_replay is adaptnc with the replay flag off.
RunResult run_method(BaselineKind kind, envs::Stream& stream,
                     const AdaptncConfig& config, std::uint64_t seed);

}  // namespace adaptnc
