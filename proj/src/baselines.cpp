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

#include "adaptnc/baselines.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "adaptnc/rng.hpp"

namespace adaptnc {

namespace {

std::uint64_t fnv1a(std::uint64_t hash, std::uint64_t word) {
    for (int i = 0; i < 8; ++i) {
        hash ^= (word >> (8 * i)) & 0xffULL;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::uint64_t hash_observation(std::uint64_t hash, const Observation& obs) {
    hash = fnv1a(hash, static_cast<std::uint64_t>(obs.t));
    for (double v : {obs.y.x, obs.y.y, obs.y_hat.x, obs.y_hat.y})
        hash = fnv1a(hash, std::bit_cast<std::uint64_t>(v));
    return hash;
}

}  // namespace

std::string to_string(BaselineKind kind) {
    switch (kind) {
        case BaselineKind::split_cp: return "split_cp";
        case BaselineKind::dtaci_fixed: return "dtaci";
        case BaselineKind::adaptnc_no_replay: return "adaptnc_no_replay";
        case BaselineKind::adaptnc: return "adaptnc";
    }
    return "unknown";
}

BaselineKind parse_baseline(const std::string& name) {
    if (name == "split_cp") return BaselineKind::split_cp;
    if (name == "dtaci" || name == "dtaci_fixed") return BaselineKind::dtaci_fixed;
    if (name == "adaptnc_no_replay") return BaselineKind::adaptnc_no_replay;
    if (name == "adaptnc") return BaselineKind::adaptnc;
    throw ConfigError("unknown method '" + name + "'");
}

RunResult split_cp_run(envs::Stream& stream, double alpha, std::size_t calibration,
                       const McKdeConfig& kde_config, std::uint64_t seed) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw InvalidInput("split_cp_run: alpha must lie in (0,1)");
    if (stream.length() <= calibration)
        throw InvalidInput("split_cp_run: stream shorter than the calibration prefix");

    RunResult result;
    std::uint64_t checksum = 0xcbf29ce484222325ULL;

    std::vector<HistoryEntry> cal;
    cal.reserve(calibration);
    for (std::size_t i = 0; i < calibration; ++i) {
        Observation obs = stream.next();
        checksum = hash_observation(checksum, obs);
        cal.push_back({std::move(obs), 0.0, 0});
    }

    const std::vector<double> uniform(cal.size(), 1.0 / cal.size());
    const PolytopeScore theta = optimize_score(cal, uniform, alpha, kde_config,
                                               derive_seed(seed, 1), 2);

    std::vector<double> scores;
    scores.reserve(cal.size());
    for (const auto& e : cal) scores.push_back(score_eval(theta, e.obs.y_hat, e.obs.y));
    std::sort(scores.begin(), scores.end());

    const double n = static_cast<double>(scores.size());
    const auto rank =
        static_cast<std::size_t>(std::ceil((n + 1.0) * (1.0 - alpha) - 1e-9));
    if (rank > scores.size())
        throw InsufficientCalibration(
            "split_cp_run: finite-sample quantile index exceeds calibration size");
    const double q = scores[rank - 1];
    const double volume = region_volume(theta, q);

    while (!stream.done()) {
        Observation obs = stream.next();
        checksum = hash_observation(checksum, obs);
        const double s = score_eval(theta, obs.y_hat, obs.y);
        StepRecord record;
        record.t = obs.t;
        record.alpha_bar = alpha;
        record.q = q;
        record.covered = s <= q;
        record.volume = volume;
        record.vacuous = false;
        record.theta_version = 0;
        result.records.push_back(std::move(record));
    }

    result.stream_checksum = checksum;
    result.theta_versions = 1;
    return result;
}

RunResult dtaci_fixed_run(envs::Stream& stream, const AdaptncConfig& config,
                          std::uint64_t seed) {
    AdaptncConfig fixed = config;
    fixed.adapt_interval = kNeverAdapt;
    return run(stream, fixed, seed);
}

RunResult run_method(BaselineKind kind, envs::Stream& stream,
                     const AdaptncConfig& config, std::uint64_t seed) {
    switch (kind) {
        case BaselineKind::split_cp:
            return split_cp_run(stream, config.target_alpha, config.calibration,
                                config.mckde, seed);
        case BaselineKind::dtaci_fixed:
            return dtaci_fixed_run(stream, config, seed);
        case BaselineKind::adaptnc_no_replay: {
            AdaptncConfig no_replay = config;
            no_replay.replay = false;
            return run(stream, no_replay, seed);
        }
        case BaselineKind::adaptnc:
            return run(stream, config, seed);
    }
    throw InvalidInput("run_method: unknown baseline kind");
}

}  // namespace adaptnc
