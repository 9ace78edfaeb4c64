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

#include "adaptnc/envs/socialnav.hpp"

#include <algorithm>
#include <cmath>

#include "adaptnc/errors.hpp"

namespace adaptnc::envs {

namespace {
constexpr double kTiny = 1e-12;
}

SocialNavSim::SocialNavSim(SocialNavConfig config, std::uint64_t seed)
    : config_(config) {
    if (config_.agents < 2) throw InvalidInput("SocialNavSim: need at least 2 agents");
    rng_ = Rng(derive_seed(seed, 0x50c1a1));
    agents_.resize(config_.agents);

    const double lo = config_.goal_margin;
    const double hi = config_.world_size - config_.goal_margin;
    auto random_point = [&] { return Vec2{rng_.uniform(lo, hi), rng_.uniform(lo, hi)}; };

    for (std::size_t i = 0; i < agents_.size(); ++i) {
        Agent& a = agents_[i];
        for (int attempt = 0; attempt < 100; ++attempt) {
            a.position = random_point();
            bool clear = true;
            for (std::size_t j = 0; j < i; ++j)
                if ((a.position - agents_[j].position).norm() < 0.5) clear = false;
            if (clear) break;
        }
        a.goal = random_point();
        a.desired_speed = std::max(0.3, rng_.normal(config_.desired_speed_mean,
                                                    config_.desired_speed_std));
        a.max_speed = config_.max_speed_factor * a.desired_speed;
        a.velocity = {0.0, 0.0};
        a.preferred = {0.0, 0.0};
    }
}

double SocialNavSim::collaboration_radius(long schedule_index) const {
    const long start = static_cast<long>(config_.radius_ramp_start);
    if (schedule_index < start) return config_.radius_initial;
    const long ramp = static_cast<long>(config_.radius_ramp_steps);
    if (schedule_index >= start + ramp) return config_.radius_final;
    const double frac = static_cast<double>(schedule_index - start) /
                        static_cast<double>(ramp);
    return config_.radius_initial +
           frac * (config_.radius_final - config_.radius_initial);
}

double SocialNavSim::anisotropy(Vec2 desired_dir, Vec2 force, double lambda,
                                double rear) {
    const double fn = force.norm();
    const double en = desired_dir.norm();
    if (fn < kTiny || en < kTiny) return 1.0;
    const double cos_phi = desired_dir.dot(force) / (en * fn);
    if (cos_phi >= 0.0) return lambda + (1.0 - lambda) * (1.0 + cos_phi) / 2.0;
    return rear;
}

Vec2 SocialNavSim::social_force(const Agent& self, const Agent& other,
                                Vec2 desired_dir) const {
    const Vec2 offset = self.position - other.position;
    const double d = offset.norm();
    if (d < kTiny) return {0.0, 0.0};
    const Vec2 n = offset / d;
    const double s_ab = other.velocity.norm() * config_.anticipation_time;
    const double b = std::sqrt((d * d + (d - s_ab) * (d - s_ab)) / 2.0);
    if (b < kTiny) return {0.0, 0.0};
    // |2d - s| keeps the elliptical approximation repulsive inside the
    // anticipation radius, where the raw factor would change sign.
    const double magnitude = (config_.repulsion_strength / config_.repulsion_range) *
                             std::exp(-b / config_.repulsion_range) *
                             std::abs(2.0 * d - s_ab) / (2.0 * b);
    const Vec2 raw = magnitude * n;
    return anisotropy(desired_dir, raw, config_.anisotropy_lambda,
                      config_.rear_influence) *
           raw;
}

Vec2 SocialNavSim::wall_force(const Agent& self, Vec2 desired_dir) const {
    Vec2 total{0.0, 0.0};
    const double w = config_.world_size;
    // (distance to wall, inward normal) for each boundary of [0,w]^2
    const struct {
        double dist;
        Vec2 normal;
    } walls[4] = {{self.position.x, {1.0, 0.0}},
                  {w - self.position.x, {-1.0, 0.0}},
                  {self.position.y, {0.0, 1.0}},
                  {w - self.position.y, {0.0, -1.0}}};
    for (const auto& wall : walls) {
        const double d = std::max(0.0, wall.dist);
        const Vec2 raw = (config_.wall_strength / config_.wall_range) *
                         std::exp(-d / config_.wall_range) * wall.normal;
        total += anisotropy(desired_dir, raw, config_.anisotropy_lambda,
                            config_.rear_influence) *
                 raw;
    }
    return total;
}

void SocialNavSim::step() {
    const long schedule_index =
        static_cast<long>(step_count_) - static_cast<long>(config_.warmup);
    const double radius = collaboration_radius(schedule_index);

    std::vector<Vec2> accel(agents_.size());
    for (std::size_t i = 0; i < agents_.size(); ++i) {
        Agent& a = agents_[i];
        const Vec2 to_goal = a.goal - a.position;
        const double dist = to_goal.norm();
        const Vec2 desired_dir = dist > kTiny ? to_goal / dist : Vec2{0.0, 0.0};
        const Vec2 desired_velocity = a.desired_speed * desired_dir;

        Vec2 dw = (desired_velocity - a.velocity) / config_.relaxation_tau;
        for (std::size_t j = 0; j < agents_.size(); ++j) {
            if (j == i) continue;
            const Vec2 offset = a.position - agents_[j].position;
            const double d = offset.norm();
            // Physical contact is not gated by the collaboration radius.
            const double touch = 2.0 * config_.body_radius;
            if (d < touch && d > kTiny)
                dw += config_.body_stiffness * (touch - d) * (offset / d);
            if (d > radius) continue;  // collaboration gate, social force only
            dw += social_force(a, agents_[j], desired_dir);
        }
        dw += wall_force(a, desired_dir);
        dw += Vec2{rng_.normal(0.0, config_.fluctuation_sigma),
                   rng_.normal(0.0, config_.fluctuation_sigma)};
        accel[i] = dw;
    }

    for (std::size_t i = 0; i < agents_.size(); ++i) {
        Agent& a = agents_[i];
        a.preferred += config_.dt * accel[i];
        const double speed = a.preferred.norm();
        const double scale = speed > kTiny ? std::min(1.0, a.max_speed / speed) : 1.0;
        a.velocity = scale * a.preferred;
        a.position += config_.dt * a.velocity;
        a.position.x = std::clamp(a.position.x, 0.0, config_.world_size);
        a.position.y = std::clamp(a.position.y, 0.0, config_.world_size);

        if ((a.goal - a.position).norm() < config_.arrival_distance) {
            const double lo = config_.goal_margin;
            const double hi = config_.world_size - config_.goal_margin;
            a.goal = {rng_.uniform(lo, hi), rng_.uniform(lo, hi)};
        }
    }
    ++step_count_;
}

Vec2 socialnav_predict(std::span<const Vec2> history, double dt, std::size_t horizon,
                       std::size_t avg) {
    if (history.size() < 10)
        throw InsufficientHistory("socialnav_predict: need at least 10 history steps");
    if (avg < 1 || avg >= history.size())
        throw InvalidInput("socialnav_predict: invalid velocity averaging span");
    const Vec2 last = history.back();
    const Vec2 base = history[history.size() - 1 - avg];
    const Vec2 mean_velocity = (last - base) / (static_cast<double>(avg) * dt);
    return last + static_cast<double>(horizon) * dt * mean_velocity;
}

SocialNavStream::SocialNavStream(SocialNavConfig config, std::uint64_t seed)
    : config_(config) {
    reset(seed);
}

void SocialNavStream::reset(std::uint64_t seed) {
    seed_ = seed;
    sim_.clear();
    sim_.emplace_back(config_, seed);
    ego_positions_.clear();
    ego_velocities_.clear();
    ego_positions_.push_back(sim_.front().agents().front().position);
    ego_velocities_.push_back(sim_.front().agents().front().velocity);
    emitted_ = 0;
}

void SocialNavStream::advance_to(std::size_t sim_time) {
    while (sim_.front().time() < sim_time) {
        sim_.front().step();
        ego_positions_.push_back(sim_.front().agents().front().position);
        ego_velocities_.push_back(sim_.front().agents().front().velocity);
    }
}

Observation SocialNavStream::next() {
    if (done()) throw StreamExhausted("SocialNavStream exhausted");
    // Emission k is based at simulated time k + history_steps, so the
    // predictor always has a full history window and the truth is realized
    // horizon_steps later.
    const std::size_t base = emitted_ + config_.history_steps;
    advance_to(base + config_.horizon_steps);

    const std::span<const Vec2> hist(ego_positions_.data(), base + 1);
    const Vec2 prediction =
        socialnav_predict(hist.subspan(base + 1 - config_.history_steps),
                          config_.dt, config_.horizon_steps,
                          config_.velocity_avg_steps);

    Observation obs;
    obs.t = static_cast<long>(emitted_);
    const Vec2 p = ego_positions_[base];
    const Vec2 v = ego_velocities_[base];
    obs.features = {p.x, p.y, v.x, v.y};
    obs.y = ego_positions_[base + config_.horizon_steps];
    obs.y_hat = prediction;
    ++emitted_;
    return obs;
}

}  // namespace adaptnc::envs
