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

#include <cstdint>
#include <vector>

#include "adaptnc/envs/stream.hpp"
#include "adaptnc/rng.hpp"

namespace adaptnc::envs {

/// Bivariate normal with cached Cholesky factor of the covariance.
class Gaussian2 {
public:
    Gaussian2(Vec2 mean, double cxx, double cxy, double cyy);

    Vec2 mean() const { return mean_; }
    Vec2 sample(Rng& rng) const;
    /// Negative log density.
    double nll(Vec2 z) const;

private:
    Vec2 mean_;
    double cxx_, cxy_, cyy_;
    double l11_, l21_, l22_;  // lower Cholesky
    double log_norm_;         // log((2 pi)^? sqrt(det))
    double ixx_, ixy_, iyy_;  // inverse covariance
};

struct GmmStreamConfig {
    Gaussian2 component1{{1.0, -1.2}, 1.2, 0.6, 0.9};
    Gaussian2 component2{{-1.0, -1.2}, 0.8, -0.3, 1.1};
    std::size_t length = 7000;      ///< scheduled segment length
    std::size_t ramp_start = 2500;  ///< mixing weight 0 before this index
    std::size_t ramp_end = 4500;    ///< mixing weight 1 from this index on
    std::size_t warmup = 0;         ///< extra pre-schedule steps (weight 0)
};

/// Two-component mixture stream with a piecewise-linear weight ramp. The
/// predictor is the fixed zero point, so residuals equal the samples.
class GmmStream : public Stream {
public:
    explicit GmmStream(GmmStreamConfig config, std::uint64_t seed = 0);

    void reset(std::uint64_t seed) override;
    Observation next() override;
    bool done() const override { return emitted_ >= length(); }
    std::size_t length() const override { return config_.warmup + config_.length; }

    /// Mixing weight on component 2 at a schedule index (warmup excluded;
    /// negative indices are the stationary prefix).
    double mixture_weight(long schedule_index) const;
    const GmmStreamConfig& config() const { return config_; }

private:
    GmmStreamConfig config_;
    Rng rng_{0};
    std::size_t emitted_ = 0;
};

struct AlphaStarTrace {
    std::vector<double> alpha1;
    std::vector<double> alpha2;
    std::vector<double> difference;
};

struct AlphaStarOptions {
    double alpha = 0.1;
    std::size_t quantile_samples = 8000;  ///< Monte-Carlo draws per mixture weight
    std::uint64_t seed = 0;
};

/// Per-timestep optimal miscoverage levels for the two per-component NLL
/// score functions: the level one would have to request against the
/// expanding empirical CDF of realized scores so that the threshold matches
/// the true (1-alpha) quantile of the current mixture.
AlphaStarTrace gmm_alpha_star(const GmmStreamConfig& config,
                              const AlphaStarOptions& options);

}  // namespace adaptnc::envs
