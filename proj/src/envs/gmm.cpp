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

#include "adaptnc/envs/gmm.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "adaptnc/errors.hpp"

namespace adaptnc::envs {

namespace {
constexpr double kLog2Pi = 1.8378770664093454835606594728112;
}

Gaussian2::Gaussian2(Vec2 mean, double cxx, double cxy, double cyy)
    : mean_(mean), cxx_(cxx), cxy_(cxy), cyy_(cyy) {
    const double det = cxx * cyy - cxy * cxy;
    if (!(cxx > 0.0) || !(det > 0.0))
        throw InvalidInput("Gaussian2: covariance must be positive-definite");
    l11_ = std::sqrt(cxx);
    l21_ = cxy / l11_;
    l22_ = std::sqrt(cyy - l21_ * l21_);
    log_norm_ = kLog2Pi + 0.5 * std::log(det);
    ixx_ = cyy / det;
    ixy_ = -cxy / det;
    iyy_ = cxx / det;
}

Vec2 Gaussian2::sample(Rng& rng) const {
    const double n1 = rng.normal();
    const double n2 = rng.normal();
    return {mean_.x + l11_ * n1, mean_.y + l21_ * n1 + l22_ * n2};
}

double Gaussian2::nll(Vec2 z) const {
    const Vec2 d = z - mean_;
    const double quad = d.x * (ixx_ * d.x + ixy_ * d.y) + d.y * (ixy_ * d.x + iyy_ * d.y);
    return 0.5 * quad + log_norm_;
}

GmmStream::GmmStream(GmmStreamConfig config, std::uint64_t seed)
    : config_(std::move(config)) {
    if (config_.ramp_end < config_.ramp_start)
        throw InvalidInput("GmmStream: ramp_end must be at least ramp_start");
    reset(seed);
}

void GmmStream::reset(std::uint64_t seed) {
    rng_ = Rng(derive_seed(seed, 0x63'6d6d));
    emitted_ = 0;
}

double GmmStream::mixture_weight(long schedule_index) const {
    if (schedule_index < static_cast<long>(config_.ramp_start)) return 0.0;
    if (schedule_index >= static_cast<long>(config_.ramp_end)) return 1.0;
    const double span = static_cast<double>(config_.ramp_end - config_.ramp_start);
    return static_cast<double>(schedule_index - static_cast<long>(config_.ramp_start)) /
           span;
}

Observation GmmStream::next() {
    if (done()) throw StreamExhausted("GmmStream exhausted");
    const long t = static_cast<long>(emitted_);
    const long schedule_index = t - static_cast<long>(config_.warmup);
    const double w = mixture_weight(schedule_index);
    const bool second = rng_.uniform() < w;
    const Vec2 y = second ? config_.component2.sample(rng_)
                          : config_.component1.sample(rng_);
    ++emitted_;
    Observation obs;
    obs.t = t;
    obs.y = y;
    obs.y_hat = {0.0, 0.0};
    return obs;
}

AlphaStarTrace gmm_alpha_star(const GmmStreamConfig& config,
                              const AlphaStarOptions& options) {
    if (!(options.alpha > 0.0 && options.alpha < 1.0))
        throw InvalidInput("gmm_alpha_star: alpha must lie in (0,1)");
    GmmStream stream(config, options.seed);

    const std::size_t total = stream.length();
    std::vector<Vec2> data;
    data.reserve(total);
    while (!stream.done()) data.push_back(stream.next().y);

    const Gaussian2& g1 = config.component1;
    const Gaussian2& g2 = config.component2;

    // True current quantile of each score function under mixture(w),
    // estimated by a large Monte-Carlo panel and cached by weight value.
    struct Quantiles {
        double q1, q2;
    };
    std::map<double, Quantiles> cache;
    const std::size_t m = options.quantile_samples;
    const auto rank =
        std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil(
                                    (1.0 - options.alpha) * static_cast<double>(m) - 1e-9)),
                                1, m);
    auto current_quantiles = [&](double w) -> Quantiles {
        auto it = cache.find(w);
        if (it != cache.end()) return it->second;
        Rng rng(derive_seed(options.seed, 0xa1fa'0000 + cache.size()));
        std::vector<double> s1(m), s2(m);
        for (std::size_t i = 0; i < m; ++i) {
            const bool second = rng.uniform() < w;
            const Vec2 z = second ? g2.sample(rng) : g1.sample(rng);
            s1[i] = g1.nll(z);
            s2[i] = g2.nll(z);
        }
        std::nth_element(s1.begin(), s1.begin() + (rank - 1), s1.end());
        std::nth_element(s2.begin(), s2.begin() + (rank - 1), s2.end());
        const Quantiles q{s1[rank - 1], s2[rank - 1]};
        cache.emplace(w, q);
        return q;
    };

    AlphaStarTrace trace;
    trace.alpha1.reserve(total);
    trace.alpha2.reserve(total);
    trace.difference.reserve(total);

    std::vector<double> hist1, hist2;  // expanding sorted score histories
    hist1.reserve(total);
    hist2.reserve(total);
    for (std::size_t t = 0; t < total; ++t) {
        const double s1 = g1.nll(data[t]);
        const double s2 = g2.nll(data[t]);
        hist1.insert(std::upper_bound(hist1.begin(), hist1.end(), s1), s1);
        hist2.insert(std::upper_bound(hist2.begin(), hist2.end(), s2), s2);

        const double w =
            stream.mixture_weight(static_cast<long>(t) - static_cast<long>(config.warmup));
        const Quantiles q = current_quantiles(w);

        const double n = static_cast<double>(t + 1);
        const double f1 =
            static_cast<double>(std::upper_bound(hist1.begin(), hist1.end(), q.q1) -
                                hist1.begin()) /
            n;
        const double f2 =
            static_cast<double>(std::upper_bound(hist2.begin(), hist2.end(), q.q2) -
                                hist2.begin()) /
            n;
        trace.alpha1.push_back(1.0 - f1);
        trace.alpha2.push_back(1.0 - f2);
        trace.difference.push_back(trace.alpha1.back() - trace.alpha2.back());
    }
    return trace;
}

}  // namespace adaptnc::envs
