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

#include "adaptnc/density.hpp"

#include <algorithm>
#include <cmath>

#include "adaptnc/parallel.hpp"
#include "adaptnc/rng.hpp"

namespace adaptnc {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
// exp(-45) < 3e-20; contributions beyond this radius are numerically inert.
constexpr double kCutoffSq = 90.0;
constexpr double kBandwidthFloor = 1e-6;
}  // namespace

double bandwidth(std::size_t n, int dim, BandwidthMethod method, double factor) {
    if (n < 2) throw InvalidInput("bandwidth: need at least 2 samples");
    if (dim < 1) throw InvalidInput("bandwidth: dimension must be positive");
    if (!(factor > 0.0)) throw InvalidInput("bandwidth: factor must be positive");
    const double nn = static_cast<double>(n);
    const double expo = -1.0 / (dim + 4);
    double h = 0.0;
    switch (method) {
        case BandwidthMethod::scott:
            h = std::pow(nn, expo);
            break;
        case BandwidthMethod::silverman:
            h = std::pow(nn * (dim + 2) / 4.0, expo);
            break;
    }
    return h * factor;
}

WeightedKde WeightedKde::fit(std::vector<Vec2> points, std::vector<double> weights,
                             double bandwidth) {
    if (points.empty() || points.size() != weights.size())
        throw InvalidInput("WeightedKde: points/weights size mismatch");
    if (!(bandwidth > 0.0)) throw InvalidInput("WeightedKde: bandwidth must be positive");
    double sum = 0.0;
    for (double w : weights) {
        if (w < 0.0 || !std::isfinite(w))
            throw InvalidInput("WeightedKde: weights must be finite and nonnegative");
        sum += w;
    }
    if (!(sum > 0.0)) throw InvalidInput("WeightedKde: weight sum must be positive");

    WeightedKde kde;
    kde.points_ = std::move(points);
    kde.weights_ = std::move(weights);
    kde.h_ = bandwidth;
    kde.cumulative_.resize(kde.weights_.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < kde.weights_.size(); ++i) {
        kde.weights_[i] /= sum;
        acc += kde.weights_[i];
        kde.cumulative_[i] = acc;
    }
    kde.cumulative_.back() = 1.0;
    return kde;
}

double WeightedKde::evaluate(Vec2 z) const {
    const double inv2h2 = 1.0 / (2.0 * h_ * h_);
    const double cutoff = kCutoffSq * h_ * h_;
    double acc = 0.0;
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const double d2 = (z - points_[i]).squared_norm();
        if (d2 > cutoff) continue;
        acc += weights_[i] * std::exp(-d2 * inv2h2);
    }
    return acc / (kTwoPi * h_ * h_);
}

std::vector<Vec2> WeightedKde::sample(std::size_t m, std::uint64_t seed) const {
    std::vector<Vec2> out(m);
    parallel_for(m, [&](std::size_t i) {
        Rng rng(derive_seed(seed, i));
        const double u = rng.uniform();
        const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
        const std::size_t idx =
            std::min<std::size_t>(it - cumulative_.begin(), points_.size() - 1);
        out[i] = points_[idx] + Vec2{h_ * rng.normal(), h_ * rng.normal()};
    });
    return out;
}

HdrSample mckde_hdr(std::span<const Vec2> points, std::span<const double> weights,
                    double alpha, const McKdeConfig& config, std::uint64_t seed) {
    if (points.size() < 2) throw InvalidInput("mckde_hdr: need at least 2 data points");
    if (points.size() != weights.size())
        throw InvalidInput("mckde_hdr: points/weights size mismatch");
    if (config.samples < 100) throw InvalidInput("mckde_hdr: need at least 100 samples");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw InvalidInput("mckde_hdr: alpha must lie in (0,1)");

    const double h =
        std::max(kBandwidthFloor, bandwidth(points.size(), 2, config.bandwidth_method,
                                            config.bandwidth_factor));
    const auto kde = WeightedKde::fit({points.begin(), points.end()},
                                      {weights.begin(), weights.end()}, h);
    const auto draws = kde.sample(config.samples, seed);

    std::vector<double> scores(draws.size());
    parallel_for(draws.size(), [&](std::size_t i) { scores[i] = kde.evaluate(draws[i]); });

    const double m = static_cast<double>(config.samples);
    auto rank = static_cast<std::size_t>(std::floor(alpha * m + 1e-9));
    rank = std::max<std::size_t>(rank, 1);
    std::vector<double> order = scores;
    std::nth_element(order.begin(), order.begin() + (rank - 1), order.end());
    const double tau = order[rank - 1];

    HdrSample hdr;
    hdr.tau = tau;
    hdr.points.reserve(draws.size());
    for (std::size_t i = 0; i < draws.size(); ++i)
        if (scores[i] >= tau) hdr.points.push_back(draws[i]);
    return hdr;
}

}  // namespace adaptnc
