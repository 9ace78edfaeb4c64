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

#include <memory>
#include <string>
#include <vector>

#include "adaptnc/adaptnc.hpp"
#include "adaptnc/baselines.hpp"
#include "adaptnc/envs/gmm.hpp"
#include "adaptnc/envs/localization.hpp"
#include "adaptnc/envs/multirotor.hpp"
#include "adaptnc/envs/socialnav.hpp"

namespace adaptnc {

/// One experiment file: an environment, a method, the AdaptNC settings, and
/// the seeds to sweep. Unknown keys anywhere in the file are rejected.
struct ExperimentConfig {
    std::string env;  ///< gmm | localization | socialnav | multirotor
    std::vector<BaselineKind> methods{BaselineKind::adaptnc};
    AdaptncConfig adaptnc;
    std::vector<std::uint64_t> seeds{0};
    std::string output_dir = "out";
    std::size_t local_window = 100;

    envs::GmmStreamConfig gmm;
    envs::LocalizationConfig localization;
    envs::SocialNavConfig socialnav;
    envs::MultirotorConfig multirotor;
};

/// Parses and validates a JSON experiment file. Throws ConfigError with a
/// message naming the offending key.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& json_text);

/// Instantiates the configured environment with its warmup prefix sized to
/// the calibration split.
std::unique_ptr<envs::Stream> make_stream(const ExperimentConfig& config,
                                          std::uint64_t seed);

}  // namespace adaptnc
