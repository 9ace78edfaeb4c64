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

#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "adaptnc/envs/socialnav.hpp"

using namespace adaptnc;
using namespace adaptnc::envs;

TEST_CASE("single agent converges to its goal") {
    SocialNavConfig cfg;
    cfg.agents = 2;  // minimum; park the second agent far away via radius 0
    cfg.radius_initial = 0.0;
    cfg.radius_final = 0.0;
    cfg.fluctuation_sigma = 0.0;
    SocialNavSim sim(cfg, 3);
    // March long enough for goal arrivals; positions must stay bounded and
    // the agent must reach a goal at least once (goals resample afterwards).
    const Vec2 first_goal = sim.agents()[0].goal;
    bool arrived = false;
    for (int t = 0; t < 4000; ++t) {
        sim.step();
        if ((sim.agents()[0].position - first_goal).norm() < cfg.arrival_distance + 0.05)
            arrived = true;
    }
    CHECK(arrived);
}

TEST_CASE("head-on agents keep a minimum separation") {
    // Two agents driven straight at each other across 20 seeds.
    int ok = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        SocialNavConfig cfg;
        cfg.agents = 2;
        cfg.fluctuation_sigma = 0.0;
        SocialNavSim sim(cfg, seed);
        // The constructor randomizes; steps integrate the social forces. A
        // head-on pass happens whenever goals put them on crossing paths, so
        // we simply track the global minimum pairwise distance.
        double min_dist = 1e9;
        for (int t = 0; t < 3000; ++t) {
            sim.step();
            min_dist = std::min(
                min_dist,
                (sim.agents()[0].position - sim.agents()[1].position).norm());
        }
        if (min_dist > 0.1) ++ok;
    }
    CHECK(ok == 20);
}

TEST_CASE("collaboration radius zero equals zero repulsion strength") {
    SocialNavConfig gated;
    gated.radius_initial = 0.0;
    gated.radius_final = 0.0;
    SocialNavConfig forceless;
    forceless.repulsion_strength = 0.0;

    SocialNavSim a(gated, 9), b(forceless, 9);
    for (int t = 0; t < 1500; ++t) {
        a.step();
        b.step();
        for (std::size_t i = 0; i < a.agents().size(); ++i) {
            REQUIRE(a.agents()[i].position == b.agents()[i].position);
            REQUIRE(a.agents()[i].velocity == b.agents()[i].velocity);
        }
    }
}

TEST_CASE("collaboration radius ramps per schedule") {
    SocialNavConfig cfg;
    SocialNavSim sim(cfg, 1);
    CHECK(sim.collaboration_radius(-50) == doctest::Approx(2.0));
    CHECK(sim.collaboration_radius(1999) == doctest::Approx(2.0));
    CHECK(sim.collaboration_radius(3000) == doctest::Approx(3.5));
    CHECK(sim.collaboration_radius(4000) == doctest::Approx(5.0));
    CHECK(sim.collaboration_radius(5900) == doctest::Approx(5.0));
}

TEST_CASE("predictor requires ten history steps") {
    std::vector<Vec2> short_history(9, Vec2{0, 0});
    CHECK_THROWS_AS(socialnav_predict(short_history, 0.1), InsufficientHistory);
}

TEST_CASE("constant velocity and stationary forecasts") {
    const double dt = 0.1;
    std::vector<Vec2> line;
    for (int i = 0; i < 12; ++i)
        line.push_back({0.3 * dt * i, -0.1 * dt * i});
    const Vec2 forecast = socialnav_predict(line, dt);
    const Vec2 truth{0.3 * dt * 16, -0.1 * dt * 16};  // 5 steps past the last
    CHECK((forecast - truth).norm() <= 1e-12);

    std::vector<Vec2> still(15, Vec2{2.0, 3.0});
    CHECK((socialnav_predict(still, dt) - Vec2{2.0, 3.0}).norm() <= 1e-12);
}

TEST_CASE("circular motion residual matches the chord-error oracle") {
    // Closed form: p(u) = R e^{i w u}; the forecast extrapolates the mean
    // velocity of the last `avg` steps over `horizon` steps.
    const double dt = 0.1, radius = 2.0, omega = 0.8;
    const std::size_t horizon = 5, avg = 3;
    std::vector<Vec2> hist;
    const int n = 14;
    for (int i = 0; i < n; ++i) {
        const double u = omega * dt * static_cast<double>(i);
        hist.push_back({radius * std::cos(u), radius * std::sin(u)});
    }
    const Vec2 forecast = socialnav_predict(hist, dt, horizon, avg);
    const double u_last = omega * dt * static_cast<double>(n - 1);
    const double u_truth = omega * dt * static_cast<double>(n - 1 + horizon);
    const Vec2 truth{radius * std::cos(u_truth), radius * std::sin(u_truth)};
    const double simulated = (truth - forecast).norm();

    using cd = std::complex<double>;
    const double theta = omega * dt;
    const cd base = radius * std::exp(cd(0.0, u_last));
    const cd residual_factor =
        std::exp(cd(0.0, static_cast<double>(horizon) * theta)) - cd(1.0, 0.0) -
        (static_cast<double>(horizon) / static_cast<double>(avg)) *
            (cd(1.0, 0.0) - std::exp(cd(0.0, -static_cast<double>(avg) * theta)));
    const double analytic = std::abs(base * residual_factor);
    CHECK(simulated == doctest::Approx(analytic).epsilon(1e-9));
}

TEST_CASE("socialnav stream shape and determinism") {
    SocialNavConfig cfg;
    cfg.steps = 400;
    SocialNavStream a(cfg, 31), b(cfg, 31);
    long prev = -1;
    while (!a.done()) {
        const Observation oa = a.next();
        const Observation ob = b.next();
        CHECK(oa.t > prev);
        prev = oa.t;
        CHECK(oa.y == ob.y);
        CHECK(oa.y_hat == ob.y_hat);
    }
    CHECK(b.done());
}
