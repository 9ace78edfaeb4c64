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

#include <array>
#include <cstdint>

#include "adaptnc/envs/stream.hpp"
#include "adaptnc/rng.hpp"

namespace adaptnc::envs {

/// Planar RSSI localization benchmark: a double-integrator agent under a
/// random bounded policy, observed through a log-distance path-loss channel
/// with Gauss-Markov shadowing and Jakes-style Rayleigh fading. The
/// model-based predictor (RSSI inversion + Gauss-Newton multilateration +
/// alpha-beta filter) ignores shadowing and fading, so its residuals drift
/// with the channel state.
struct LocalizationConfig {
    double dt = 0.1;
    double sigma_proc = 0.02;      ///< process noise on acceleration
    double half_extent = 6.0;      ///< workspace [-6,6]^2
    std::array<Vec2, 4> access_points{Vec2{-5.0, -5.0}, Vec2{5.0, -5.0},
                                      Vec2{5.0, 5.0}, Vec2{-5.0, 5.0}};
    double reference_power_db = -30.0;  ///< P0 at unit distance
    double path_loss_exponent = 2.2;
    double shadowing_sigma_db = 4.0;
    double shadowing_rho = 0.97;
    double carrier_hz = 2.4e9;
    double v_max = 1.0;
    double a_max = 0.5;
    double filter_alpha = 0.25;
    double filter_beta = 0.05;
    int fading_sinusoids = 16;
    bool shadowing_enabled = true;
    bool fading_enabled = true;
    std::size_t steps = 6000;
    std::size_t warmup = 0;
};

/// Log-distance path loss with the distance floored at 1e-2 m.
double path_loss_rssi(const LocalizationConfig& config, Vec2 position,
                      Vec2 access_point);

/// RSSI-to-distance inversion, Gauss-Newton multilateration from a prior,
/// and an alpha-beta filter. Holds planar position/velocity state.
class LocalizationPredictor {
public:
    explicit LocalizationPredictor(const LocalizationConfig& config)
        : config_(config) {}

    /// Processes one RSSI vector; returns the filtered position estimate.
    Vec2 update(const std::array<double, 4>& rssi);

    Vec2 position() const { return position_; }
    Vec2 velocity() const { return velocity_; }

    /// Weighted (1/d^2) nonlinear least-squares multilateration refined by
    /// damped, step-clipped Gauss-Newton iterations (cap 20).
    static Vec2 multilaterate(const std::array<Vec2, 4>& access_points,
                              const std::array<double, 4>& distances, Vec2 initial);

private:
    LocalizationConfig config_;
    Vec2 position_{0.0, 0.0};
    Vec2 velocity_{0.0, 0.0};
};

class LocalizationStream : public Stream {
public:
    explicit LocalizationStream(LocalizationConfig config, std::uint64_t seed = 0);

    void reset(std::uint64_t seed) override;
    Observation next() override;
    bool done() const override { return emitted_ >= length(); }
    std::size_t length() const override { return config_.warmup + config_.steps; }

    Vec2 true_position() const { return position_; }
    Vec2 true_velocity() const { return velocity_; }
    const std::array<double, 4>& shadowing() const { return shadowing_; }

private:
    std::array<double, 4> observe_rssi() const;
    void advance_agent();
    void advance_channel();

    LocalizationConfig config_;
    Rng rng_{0};
    std::size_t emitted_ = 0;

    Vec2 position_{0.0, 0.0};
    Vec2 velocity_{0.0, 0.0};
    std::array<double, 4> shadowing_{};
    // Jakes sum-of-sinusoids state: per access point, per sinusoid phase and
    // arrival-angle cosine.
    std::array<std::array<double, 32>, 4> fading_phase_{};
    std::array<std::array<double, 32>, 4> fading_cos_{};
    std::array<double, 4> fading_db_{};

    LocalizationPredictor predictor_{config_};
};

}  // namespace adaptnc::envs
