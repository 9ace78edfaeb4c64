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

#include "adaptnc/envs/localization.hpp"

#include <algorithm>
#include <cmath>

#include "adaptnc/errors.hpp"

namespace adaptnc::envs {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kSpeedOfLight = 2.99792458e8;
constexpr double kDistanceFloor = 1e-2;
constexpr double kFadingEps = 1e-12;
}  // namespace

double path_loss_rssi(const LocalizationConfig& config, Vec2 position,
                      Vec2 access_point) {
    const double d = std::max(kDistanceFloor, (position - access_point).norm());
    return config.reference_power_db -
           10.0 * config.path_loss_exponent * std::log10(d);
}

Vec2 LocalizationPredictor::multilaterate(const std::array<Vec2, 4>& access_points,
                                          const std::array<double, 4>& distances,
                                          Vec2 initial) {
    Vec2 x = initial;
    constexpr double damping = 1e-6;
    constexpr double step_clip = 1.0;
    for (int iter = 0; iter < 20; ++iter) {
        double hxx = damping, hxy = 0.0, hyy = damping;
        double gx = 0.0, gy = 0.0;
        for (std::size_t i = 0; i < access_points.size(); ++i) {
            const Vec2 diff = x - access_points[i];
            const double r = std::max(1e-9, diff.norm());
            const double f = r - distances[i];
            const double w = 1.0 / (distances[i] * distances[i]);
            const Vec2 j = diff / r;
            hxx += w * j.x * j.x;
            hxy += w * j.x * j.y;
            hyy += w * j.y * j.y;
            gx += w * f * j.x;
            gy += w * f * j.y;
        }
        const double det = hxx * hyy - hxy * hxy;
        Vec2 step{-(hyy * gx - hxy * gy) / det, -(hxx * gy - hxy * gx) / det};
        const double norm = step.norm();
        if (norm > step_clip) step = step * (step_clip / norm);
        x += step;
        if (norm < 1e-10) break;
    }
    return x;
}

Vec2 LocalizationPredictor::update(const std::array<double, 4>& rssi) {
    const Vec2 prior = position_ + config_.dt * velocity_;
    std::array<double, 4> distances{};
    for (std::size_t i = 0; i < rssi.size(); ++i) {
        const double exponent =
            (config_.reference_power_db - rssi[i]) / (10.0 * config_.path_loss_exponent);
        distances[i] = std::max(kDistanceFloor, std::pow(10.0, exponent));
    }
    const Vec2 measured = multilaterate(config_.access_points, distances, prior);
    const Vec2 error = measured - prior;
    position_ = prior + config_.filter_alpha * error;
    velocity_ = velocity_ + (config_.filter_beta / config_.dt) * error;
    return position_;
}

LocalizationStream::LocalizationStream(LocalizationConfig config, std::uint64_t seed)
    : config_(config) {
    if (config_.fading_sinusoids < 1 || config_.fading_sinusoids > 32)
        throw InvalidInput("LocalizationStream: fading_sinusoids must be in [1,32]");
    reset(seed);
}

void LocalizationStream::reset(std::uint64_t seed) {
    rng_ = Rng(derive_seed(seed, 0x10ca));
    emitted_ = 0;
    position_ = {0.0, 0.0};
    velocity_ = {0.0, 0.0};
    shadowing_.fill(0.0);
    const int m = config_.fading_sinusoids;
    for (std::size_t ap = 0; ap < 4; ++ap) {
        const double rotation = rng_.uniform(0.0, kTwoPi);
        for (int k = 0; k < m; ++k) {
            fading_cos_[ap][k] = std::cos(kTwoPi * (k + 0.5) / m + rotation);
            fading_phase_[ap][k] = rng_.uniform(0.0, kTwoPi);
        }
    }
    for (std::size_t ap = 0; ap < 4; ++ap) {
        double re = 0.0, im = 0.0;
        for (int k = 0; k < m; ++k) {
            re += std::cos(fading_phase_[ap][k]);
            im += std::sin(fading_phase_[ap][k]);
        }
        const double scale = 1.0 / std::sqrt(static_cast<double>(m));
        fading_db_[ap] = 10.0 * std::log10(scale * scale * (re * re + im * im) + kFadingEps);
    }
    predictor_ = LocalizationPredictor(config_);
}

std::array<double, 4> LocalizationStream::observe_rssi() const {
    std::array<double, 4> rssi{};
    for (std::size_t i = 0; i < rssi.size(); ++i) {
        rssi[i] = path_loss_rssi(config_, position_, config_.access_points[i]);
        if (config_.shadowing_enabled) rssi[i] += shadowing_[i];
        if (config_.fading_enabled) rssi[i] += fading_db_[i];
    }
    return rssi;
}

void LocalizationStream::advance_agent() {
    const Vec2 accel{rng_.uniform(-config_.a_max, config_.a_max),
                     rng_.uniform(-config_.a_max, config_.a_max)};
    const Vec2 noise{rng_.normal(0.0, config_.sigma_proc),
                     rng_.normal(0.0, config_.sigma_proc)};

    // Position first (forward Euler), then velocity.
    position_ += config_.dt * velocity_;
    velocity_ += config_.dt * (accel + noise);
    const double speed = velocity_.norm();
    if (speed > config_.v_max) velocity_ *= config_.v_max / speed;

    const double lim = config_.half_extent;
    if (position_.x > lim) {
        position_.x = 2.0 * lim - position_.x;
        velocity_.x = -velocity_.x;
    } else if (position_.x < -lim) {
        position_.x = -2.0 * lim - position_.x;
        velocity_.x = -velocity_.x;
    }
    if (position_.y > lim) {
        position_.y = 2.0 * lim - position_.y;
        velocity_.y = -velocity_.y;
    } else if (position_.y < -lim) {
        position_.y = -2.0 * lim - position_.y;
        velocity_.y = -velocity_.y;
    }
}

void LocalizationStream::advance_channel() {
    const double rho = config_.shadowing_rho;
    const double mix = std::sqrt(1.0 - rho * rho) * config_.shadowing_sigma_db;
    for (double& s : shadowing_) s = rho * s + mix * rng_.normal();

    const double doppler = velocity_.norm() * config_.carrier_hz / kSpeedOfLight;
    const int m = config_.fading_sinusoids;
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    for (std::size_t ap = 0; ap < 4; ++ap) {
        double re = 0.0, im = 0.0;
        for (int k = 0; k < m; ++k) {
            fading_phase_[ap][k] += kTwoPi * doppler * fading_cos_[ap][k] * config_.dt;
            re += std::cos(fading_phase_[ap][k]);
            im += std::sin(fading_phase_[ap][k]);
        }
        fading_db_[ap] =
            10.0 * std::log10(scale * scale * (re * re + im * im) + kFadingEps);
    }
}

Observation LocalizationStream::next() {
    if (done()) throw StreamExhausted("LocalizationStream exhausted");
    const auto rssi = observe_rssi();
    const Vec2 estimate = predictor_.update(rssi);

    Observation obs;
    obs.t = static_cast<long>(emitted_);
    obs.features.assign(rssi.begin(), rssi.end());
    obs.y = position_;
    obs.y_hat = estimate;
    ++emitted_;

    advance_agent();
    advance_channel();
    return obs;
}

}  // namespace adaptnc::envs
