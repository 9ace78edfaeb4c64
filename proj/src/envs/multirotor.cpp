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

#include "adaptnc/envs/multirotor.hpp"

#include <algorithm>
#include <cmath>

#include "adaptnc/errors.hpp"

namespace adaptnc::envs {

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;

double wrap_angle(double a) {
    while (a > kPi) a -= 2.0 * kPi;
    while (a < -kPi) a += 2.0 * kPi;
    return a;
}
}  // namespace

MultirotorState multirotor_step(const MultirotorState& state,
                                const std::array<double, 4>& control,
                                const std::array<double, 4>& health,
                                const MultirotorConfig& config) {
    const double u1 = health[0] * control[0];
    const double u2 = health[1] * control[1];
    const double u3 = health[2] * control[2];
    const double u4 = health[3] * control[3];
    const double dt = config.dt;
    const double g = config.gravity;

    MultirotorState next = state;
    next.vx += dt * g * state.pitch;
    next.vy += dt * (-g * state.roll);
    next.vz += dt * (u1 - g);
    next.vyaw += dt * u4;
    next.vpitch += dt * u2;
    next.vroll += dt * u3;

    next.x += dt * next.vx;
    next.y += dt * next.vy;
    next.z += dt * next.vz;
    next.yaw = wrap_angle(next.yaw + dt * next.vyaw);
    // Attitude limits behave like mechanical stops: the angle clamps and the
    // rate is absorbed, so it cannot wind up against the limit.
    next.pitch += dt * next.vpitch;
    if (next.pitch > config.attitude_clip) {
        next.pitch = config.attitude_clip;
        next.vpitch = std::min(next.vpitch, 0.0);
    } else if (next.pitch < -config.attitude_clip) {
        next.pitch = -config.attitude_clip;
        next.vpitch = std::max(next.vpitch, 0.0);
    }
    next.roll += dt * next.vroll;
    if (next.roll > config.attitude_clip) {
        next.roll = config.attitude_clip;
        next.vroll = std::min(next.vroll, 0.0);
    } else if (next.roll < -config.attitude_clip) {
        next.roll = -config.attitude_clip;
        next.vroll = std::max(next.vroll, 0.0);
    }
    return next;
}

Vec2 fig8_position(const MultirotorConfig& config, double t) {
    return {config.fig8_amplitude * std::sin(config.fig8_omega * t),
            config.fig8_amplitude * std::sin(2.0 * config.fig8_omega * t)};
}

Vec2 fig8_velocity(const MultirotorConfig& config, double t) {
    return {config.fig8_amplitude * config.fig8_omega *
                std::cos(config.fig8_omega * t),
            config.fig8_amplitude * 2.0 * config.fig8_omega *
                std::cos(2.0 * config.fig8_omega * t)};
}

double altitude_thrust(const MultirotorConfig& config, const MultirotorState& state) {
    return config.gravity + config.altitude_kp * (config.z_ref - state.z) -
           config.altitude_kd * state.vz;
}

MppiController::MppiController(const MultirotorConfig& config)
    : config_(config), nominal_(config.mppi_horizon, {0.0, 0.0, 0.0}) {}

double MppiController::rollout_cost(const MultirotorState& state, std::size_t t,
                                    const std::vector<std::array<double, 3>>& torques)
    const {
    const double eff = config_.mppi_planning_effectiveness;
    const std::array<double, 4> assumed{eff, eff, eff, eff};
    MultirotorState s = state;
    double cost = 0.0;
    for (std::size_t h = 0; h < torques.size(); ++h) {
        const double u1 = altitude_thrust(config_, s);
        const std::array<double, 4> u{u1, torques[h][0], torques[h][1], torques[h][2]};
        s = multirotor_step(s, u, assumed, config_);
        const double time = static_cast<double>(t + h + 1) * config_.dt;
        const Vec2 p_ref = fig8_position(config_, time);
        const Vec2 v_ref = fig8_velocity(config_, time);
        const double ex = s.x - p_ref.x, ey = s.y - p_ref.y;
        const double evx = s.vx - v_ref.x, evy = s.vy - v_ref.y;
        cost += config_.cost_position * (ex * ex + ey * ey);
        cost += config_.cost_velocity * (evx * evx + evy * evy);
        cost += config_.cost_attitude *
                (s.pitch * s.pitch + s.roll * s.roll + s.yaw * s.yaw);
        cost += config_.cost_control *
                (u1 * u1 + u[1] * u[1] + u[2] * u[2] + u[3] * u[3]);
    }
    return cost;
}

std::array<double, 3> MppiController::control(const MultirotorState& state,
                                              std::size_t t, Rng& rng) {
    const std::size_t n = config_.mppi_samples;
    const std::size_t horizon = config_.mppi_horizon;

    std::vector<std::vector<std::array<double, 3>>> noise(
        n, std::vector<std::array<double, 3>>(horizon));
    std::vector<double> costs(n);
    std::vector<std::array<double, 3>> candidate(horizon);
    const double rho = config_.mppi_noise_correlation;
    const double innovation = std::sqrt(std::max(0.0, 1.0 - rho * rho));
    for (std::size_t i = 0; i < n; ++i) {
        // AR(1)-correlated exploration across the horizon keeps candidate
        // sequences smooth, so few samples still search usefully.
        for (std::size_t h = 0; h < horizon; ++h) {
            for (std::size_t c = 0; c < 3; ++c) {
                const double sigma =
                    config_.mppi_noise_scale * config_.mppi_noise_base[c];
                const double draw = rng.normal();
                const double eps =
                    h == 0 ? sigma * draw
                           : rho * noise[i][h - 1][c] + sigma * innovation * draw;
                noise[i][h][c] = eps;
                candidate[h][c] = nominal_[h][c] + eps;
            }
        }
        costs[i] = rollout_cost(state, t, candidate);
    }

    double best = costs[0];
    double mean = 0.0;
    for (double c : costs) {
        best = std::min(best, c);
        mean += c;
    }
    mean /= static_cast<double>(n);
    // Softmin with the temperature scaled by the cost spread, so the
    // weighting stays meaningful regardless of the absolute cost level.
    const double scale =
        config_.mppi_temperature * std::max(1e-9, mean - best);
    std::vector<double> weights(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        weights[i] = std::exp(-(costs[i] - best) / scale);
        total += weights[i];
    }
    for (std::size_t h = 0; h < horizon; ++h) {
        for (std::size_t c = 0; c < 3; ++c) {
            double delta = 0.0;
            for (std::size_t i = 0; i < n; ++i) delta += weights[i] * noise[i][h][c];
            nominal_[h][c] = std::clamp(nominal_[h][c] + delta / total,
                                        -config_.torque_limit, config_.torque_limit);
        }
    }

    const std::array<double, 3> command = nominal_.front();
    // Recede: shift left, repeat the final entry.
    for (std::size_t h = 0; h + 1 < horizon; ++h) nominal_[h] = nominal_[h + 1];
    return command;
}

MultirotorStream::MultirotorStream(MultirotorConfig config, std::uint64_t seed)
    : config_(config) {
    if (config_.mppi_samples < 1 || config_.mppi_horizon < 1)
        throw InvalidInput("MultirotorStream: MPPI sample/horizon must be positive");
    reset(seed);
}

void MultirotorStream::reset(std::uint64_t seed) {
    rng_ = Rng(derive_seed(seed, 0x0f17));
    emitted_ = 0;
    sim_time_ = 0;
    state_ = MultirotorState{};
    state_.z = config_.z_ref;
    previous_ = state_;
    health_.fill(config_.initial_health);
    controller_.clear();
    controller_.emplace_back(config_);
    advance();  // establish (previous, current) so each observation has a prior
}

void MultirotorStream::advance() {
    previous_ = state_;
    const std::array<double, 3> torques =
        controller_.front().control(state_, sim_time_, rng_);
    const std::array<double, 4> u{altitude_thrust(config_, state_), torques[0],
                                  torques[1], torques[2]};
    state_ = multirotor_step(state_, u, health_, config_);

    // Degradation engages after the warmup prefix.
    if (sim_time_ >= config_.warmup) {
        const double root_dt = std::sqrt(config_.dt);
        for (double& gamma : health_) {
            gamma += -config_.degradation_drift * config_.dt +
                     config_.degradation_sigma * root_dt * rng_.normal();
            gamma = std::clamp(gamma, 0.0, 1.0);
        }
    } else {
        for (int i = 0; i < 4; ++i) rng_.normal();  // keep the draw count fixed
    }
    ++sim_time_;
}

Observation MultirotorStream::next() {
    if (done()) throw StreamExhausted("MultirotorStream exhausted");
    Observation obs;
    obs.t = static_cast<long>(emitted_);
    const auto flat = previous_.flatten();
    obs.features.assign(flat.begin(), flat.end());
    // Physics prior from the previous state; truth is the realized position.
    obs.y_hat = {previous_.x + config_.dt * previous_.vx,
                 previous_.y + config_.dt * previous_.vy};
    obs.y = {state_.x, state_.y};
    ++emitted_;
    if (!done()) advance();
    return obs;
}

}  // namespace adaptnc::envs
