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
#include <deque>
#include <span>
#include <vector>

#include "adaptnc/envs/stream.hpp"
#include "adaptnc/rng.hpp"

namespace adaptnc::envs {

/// Social-force crowd with a collaboration-radius policy shift: pairwise
/// repulsion is gated to a radius that ramps from 2 m to 5 m mid-run,
/// changing how early agents react to traffic.
struct SocialNavConfig {
    double dt = 0.1;
    double relaxation_tau = 0.5;
    double desired_speed_mean = 1.34;
    double desired_speed_std = 0.26;
    double max_speed_factor = 1.3;
    double repulsion_strength = 5.0;   ///< A
    double repulsion_range = 2.0;      ///< B
    double anticipation_time = 2.0;
    double anisotropy_lambda = 0.5;
    double rear_influence = 0.5;       ///< c
    double wall_strength = 10.0;       ///< A_wall
    double wall_range = 0.2;           ///< R_wall
    double body_radius = 0.2;          ///< physical radius per agent
    double body_stiffness = 120.0;     ///< contact spring, m/s^2 per meter
    std::size_t agents = 8;
    double world_size = 10.0;          ///< square side, [0, world]^2
    double fluctuation_sigma = 0.1;
    double goal_margin = 0.5;
    double arrival_distance = 0.3;

    double radius_initial = 2.0;
    double radius_final = 5.0;
    std::size_t radius_ramp_start = 2000;  ///< schedule index (warmup excluded)
    std::size_t radius_ramp_steps = 2000;

    std::size_t history_steps = 10;
    std::size_t horizon_steps = 5;
    std::size_t velocity_avg_steps = 3;

    std::size_t steps = 6000;
    std::size_t warmup = 0;
};

/// Multi-agent social-force simulator (synchronous Euler update).
class SocialNavSim {
public:
    struct Agent {
        Vec2 position;
        Vec2 velocity;       ///< actual (speed-clipped) velocity
        Vec2 preferred;      ///< preferred velocity w
        Vec2 goal;
        double desired_speed = 1.34;
        double max_speed = 1.74;
    };

    SocialNavSim(SocialNavConfig config, std::uint64_t seed);

    void step();
    std::size_t time() const { return step_count_; }
    double collaboration_radius(long schedule_index) const;
    const std::vector<Agent>& agents() const { return agents_; }

private:
    Vec2 social_force(const Agent& self, const Agent& other, Vec2 desired_dir) const;
    Vec2 wall_force(const Agent& self, Vec2 desired_dir) const;
    static double anisotropy(Vec2 desired_dir, Vec2 force, double lambda, double rear);

    SocialNavConfig config_;
    Rng rng_{0};
    std::vector<Agent> agents_;
    std::size_t step_count_ = 0;
};

/// Constant-velocity forecast `horizon` steps ahead with the velocity
/// averaged over the last `avg` steps. Requires at least 10 history points.
Vec2 socialnav_predict(std::span<const Vec2> history, double dt,
                       std::size_t horizon = 5, std::size_t avg = 3);

/// Ego-agent stream: one observation per simulated step, pairing the
/// 5-step-ahead forecast with the realized position (the simulator runs
/// ahead internally so each emitted observation is complete).
class SocialNavStream : public Stream {
public:
    explicit SocialNavStream(SocialNavConfig config, std::uint64_t seed = 0);

    void reset(std::uint64_t seed) override;
    Observation next() override;
    bool done() const override { return emitted_ >= length(); }
    std::size_t length() const override { return config_.warmup + config_.steps; }

private:
    void advance_to(std::size_t sim_time);

    SocialNavConfig config_;
    std::uint64_t seed_ = 0;
    std::vector<SocialNavSim> sim_;  // single element; deferred construction
    std::vector<Vec2> ego_positions_;
    std::vector<Vec2> ego_velocities_;
    std::size_t emitted_ = 0;
};

}  // namespace adaptnc::envs
