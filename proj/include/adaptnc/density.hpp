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
#include <span>
#include <vector>

#include "adaptnc/errors.hpp"
#include "adaptnc/vec2.hpp"

namespace adaptnc {

enum class BandwidthMethod { scott, silverman };

struct McKdeConfig {
    std::size_t samples = 4000;  ///< Monte-Carlo draws M
    BandwidthMethod bandwidth_method = BandwidthMethod::scott;
    double bandwidth_factor = 1.0;
};

/// Scott: N^(-1/(d+4)); Silverman: (N(d+2)/4)^(-1/(d+4)); both scaled by
/// `factor`. Note the two rules coincide at d = 2.
double bandwidth(std::size_t n, int dim, BandwidthMethod method, double factor);

/// Weighted isotropic Gaussian KDE over planar samples.
class WeightedKde {
public:
    /// Weights must be nonnegative with a positive sum; they are normalized
    /// to sum to 1. Bandwidth must be positive.
    static WeightedKde fit(std::vector<Vec2> points, std::vector<double> weights,
                           double bandwidth);

    /// f(z) = sum_i w_i (2 pi h^2)^-1 exp(-|z - x_i|^2 / (2 h^2)).
    double evaluate(Vec2 z) const;

    /// M mixture draws: component i with probability w_i plus N(0, h^2 I)
    /// noise. Per-sample generator streams are derived from (seed, index),
    /// so output is bit-identical regardless of evaluation order.
    std::vector<Vec2> sample(std::size_t m, std::uint64_t seed) const;

    double bandwidth() const { return h_; }
    const std::vector<Vec2>& points() const { return points_; }
    const std::vector<double>& weights() const { return weights_; }

private:
    std::vector<Vec2> points_;
    std::vector<double> weights_;
    std::vector<double> cumulative_;
    double h_ = 1.0;
};

/// Monte-Carlo draws retained above the density threshold tau.
struct HdrSample {
    std::vector<Vec2> points;
    double tau = 0.0;
};

/// High-density-region extraction: fit a weighted KDE (bandwidth floored at
/// 1e-6), draw M samples, score them, and keep those at or above the
/// alpha-quantile of the scores (lower order statistic floor(alpha*M),
/// floored at 1). Retains roughly a 1-alpha fraction of the draws.
HdrSample mckde_hdr(std::span<const Vec2> points, std::span<const double> weights,
                    double alpha, const McKdeConfig& config, std::uint64_t seed);

}  // namespace adaptnc
