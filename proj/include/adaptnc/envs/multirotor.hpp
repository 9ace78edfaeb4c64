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
#include <vector>

#include "adaptnc/envs/stream.hpp"
#include "adaptnc/rng.hpp"

namespace adaptnc::envs {

/// Linearized 12-state multirotor tracking a figure-eight under stochastic
/// actuator degradation. Controls are [thrust, pitch torque, roll torque,
/// yaw torque]; the health vector multiplies them elementwise.
struct MultirotorConfig {
    double dt = 0.1;
    double gravity = 9.81;
    double degradation_drift = 5e-4;      ///< alpha
    double degradation_sigma = 2.5e-4;    ///< sigma (Wiener diffusion)
    double initial_health = 1.0;
    double attitude_clip = 0.3;

    double fig8_amplitude = 3.0;
    double fig8_omega = 0.25;
    double z_ref = 2.0;
    double altitude_kp = 2.0;
    double altitude_kd = 3.0;

    std::size_t mppi_samples = 30;  ///< N
    std::size_t mppi_horizon = 35;  ///< H
    double mppi_temperature = 0.6;
    double mppi_noise_scale = 0.5;
    std::array<double, 3> mppi_noise_base{0.05, 0.05, 0.05};  ///< torque channels
    double mppi_noise_correlation = 0.995;  ///< AR(1) across the horizon
    double torque_limit = 1.0;             ///< nominal torque clamp
    /// Fixed actuator effectiveness assumed by the planner's rollouts. The
    /// policy never observes the true health; a conservative constant keeps
    /// the loop stable across the degradation range.
    double mppi_planning_effectiveness = 1.0;
    double cost_position = 10.0;
    double cost_velocity = 1.0;
    double cost_attitude = 5.0;
    double cost_control = 0.1;

    std::size_t steps = 6000;
    std::size_t warmup = 0;  ///< degradation starts after this many steps
};

struct MultirotorState {
    double x = 0.0, vx = 0.0;
    double y = 0.0, vy = 0.0;
    double z = 0.0, vz = 0.0;
    double yaw = 0.0, vyaw = 0.0;
    double pitch = 0.0, vpitch = 0.0;
    double roll = 0.0, vroll = 0.0;

    std::array<double, 12> flatten() const {
        return {x, vx, y, vy, z, vz, yaw, vyaw, pitch, vpitch, roll, vroll};
    }
};

/// One dynamics step under effective controls u_eff = health (*) u.
/// Semi-implicit Euler: velocities update from the current attitude and
/// torques, then positions and attitudes integrate the new rates; yaw wraps
/// to [-pi, pi], pitch and roll clamp to the attitude limit.
MultirotorState multirotor_step(const MultirotorState& state,
                                const std::array<double, 4>& control,
                                const std::array<double, 4>& health,
                                const MultirotorConfig& config);

/// Planar figure-eight reference and its velocity at time t (seconds).
Vec2 fig8_position(const MultirotorConfig& config, double t);
Vec2 fig8_velocity(const MultirotorConfig& config, double t);

/// Altitude PD on thrust around hover: u1 = g + kp (z_ref - z) - kd vz.
double altitude_thrust(const MultirotorConfig& config, const MultirotorState& state);

/// Sampling-based torque controller: perturbs a nominal torque sequence with
/// Gaussian noise, rolls out the undegraded model, softmin-weights by
/// accumulated quadratic cost, applies the first input and recedes.
class MppiController {
public:
    explicit MppiController(const MultirotorConfig& config);

    /// Returns the torque triple to apply at time index `t` (steps).
    std::array<double, 3> control(const MultirotorState& state, std::size_t t, Rng& rng);

    const std::vector<std::array<double, 3>>& nominal() const { return nominal_; }

private:
    double rollout_cost(const MultirotorState& state, std::size_t t,
                        const std::vector<std::array<double, 3>>& torques) const;

    MultirotorConfig config_;
    std::vector<std::array<double, 3>> nominal_;
};

class MultirotorStream : public Stream {
public:
    explicit MultirotorStream(MultirotorConfig config, std::uint64_t seed = 0);

    void reset(std::uint64_t seed) override;
    Observation next() override;
    bool done() const override { return emitted_ >= length(); }
    std::size_t length() const override { return config_.warmup + config_.steps; }

    const MultirotorState& state() const { return state_; }
    const std::array<double, 4>& health() const { return health_; }

private:
    void advance();

    MultirotorConfig config_;
    Rng rng_{0};
    std::size_t emitted_ = 0;
    std::size_t sim_time_ = 0;
    MultirotorState state_;
    MultirotorState previous_;
    std::array<double, 4> health_{1.0, 1.0, 1.0, 1.0};
    std::vector<MppiController> controller_;  // single element; deferred construction
};

}  // namespace adaptnc::envs
