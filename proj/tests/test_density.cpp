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

#include <algorithm>
#include <cmath>
#include <vector>

#include "adaptnc/density.hpp"
#include "adaptnc/geometry.hpp"
#include "adaptnc/rng.hpp"

using namespace adaptnc;

namespace {

// Analytic area of the (1-alpha) highest-density region of a standard
// bivariate normal: pi * (-2 ln(alpha)).
double gaussian_hdr_area(double alpha) { return 3.14159265358979324 * -2.0 * std::log(alpha); }

std::vector<Vec2> standard_normal_cloud(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Vec2> pts(n);
    for (auto& p : pts) p = {rng.normal(), rng.normal()};
    return pts;
}

double hdr_hull_area_error(std::size_t n, std::size_t m, std::uint64_t seed,
                           double alpha = 0.1) {
    const auto pts = standard_normal_cloud(n, seed);
    const std::vector<double> w(n, 1.0 / static_cast<double>(n));
    McKdeConfig cfg;
    cfg.samples = m;
    const auto hdr = mckde_hdr(pts, w, alpha, cfg, seed ^ 0xabcd);
    const double area = quickhull(hdr.points).area();
    const double truth = gaussian_hdr_area(alpha);
    return std::abs(area - truth) / truth;
}

}  // namespace

TEST_CASE("bandwidth closed forms") {
    CHECK(bandwidth(100, 2, BandwidthMethod::scott, 1.0) ==
          doctest::Approx(std::pow(100.0, -1.0 / 6.0)));
    CHECK(bandwidth(100, 2, BandwidthMethod::scott, 1.0) ==
          doctest::Approx(0.46416).epsilon(1e-4));
    // Silverman: (N(d+2)/4)^(-1/(d+4)); identical to Scott at d = 2.
    CHECK(bandwidth(100, 2, BandwidthMethod::silverman, 1.0) ==
          doctest::Approx(std::pow(100.0 * 4.0 / 4.0, -1.0 / 6.0)));
    // d = 1 separates the two rules.
    CHECK(bandwidth(100, 1, BandwidthMethod::silverman, 1.0) ==
          doctest::Approx(std::pow(75.0, -0.2)));
    CHECK(bandwidth(100, 1, BandwidthMethod::scott, 1.0) ==
          doctest::Approx(std::pow(100.0, -0.2)));
    // Linear in the factor.
    CHECK(bandwidth(100, 2, BandwidthMethod::scott, 2.0) ==
          doctest::Approx(2.0 * bandwidth(100, 2, BandwidthMethod::scott, 1.0)));
    CHECK_THROWS_AS(bandwidth(1, 2, BandwidthMethod::scott, 1.0), InvalidInput);
}

TEST_CASE("kde_eval at a single point") {
    const auto kde = WeightedKde::fit({{0, 0}}, {1.0}, 1.0);
    CHECK(kde.evaluate({0, 0}) == doctest::Approx(1.0 / (2.0 * 3.14159265358979324)));
    CHECK(kde.evaluate({10, 0}) <= 1e-20);
}

TEST_CASE("kde_eval symmetric data yields a symmetric density") {
    const auto kde = WeightedKde::fit({{1.5, 0.5}, {-1.5, -0.5}}, {0.5, 0.5}, 0.8);
    Rng rng(2);
    for (int i = 0; i < 100; ++i) {
        const Vec2 z{rng.uniform(-3, 3), rng.uniform(-3, 3)};
        CHECK(kde.evaluate(z) == doctest::Approx(kde.evaluate(-z)).epsilon(1e-12));
    }
}

TEST_CASE("kde_eval integrates to one over a bounding box") {
    const auto pts = standard_normal_cloud(300, 21);
    const std::vector<double> w(pts.size(), 1.0);
    const auto kde = WeightedKde::fit(pts, w, 0.35);
    Rng rng(22);
    const double box = 6.0;
    double acc = 0.0;
    const std::size_t n = 200'000;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 z{rng.uniform(-box, box), rng.uniform(-box, box)};
        acc += kde.evaluate(z);
    }
    const double integral = acc / static_cast<double>(n) * (2 * box) * (2 * box);
    CHECK(integral >= 0.99 - 0.01);
    CHECK(integral <= 1.01);
}

TEST_CASE("kde_sample determinism and degenerate mixtures") {
    const auto kde =
        WeightedKde::fit({{3.0, -1.0}, {0.0, 0.0}}, {1.0, 0.0}, 1e-9);
    const auto a = kde.sample(500, 42);
    const auto b = kde.sample(500, 42);
    CHECK(a == b);  // bit-identical across calls with the same seed
    for (const Vec2& p : a) CHECK((p - Vec2{3.0, -1.0}).norm() <= 1e-6);
}

TEST_CASE("kde_sample mean matches the component location") {
    const auto kde = WeightedKde::fit({{3.0, 4.0}}, {1.0}, 1.0);
    const auto samples = kde.sample(100'000, 7);
    Vec2 mean{0, 0};
    for (const Vec2& p : samples) mean += p;
    mean = mean / static_cast<double>(samples.size());
    CHECK(std::abs(mean.x - 3.0) <= 0.02);
    CHECK(std::abs(mean.y - 4.0) <= 0.02);
}

TEST_CASE("mckde_hdr retained fraction and thresholds") {
    const auto pts = standard_normal_cloud(800, 5);
    const std::vector<double> w(pts.size(), 1.0);
    McKdeConfig cfg;
    cfg.samples = 4000;
    const double alpha = 0.1;
    const auto hdr = mckde_hdr(pts, w, alpha, cfg, 99);
    const double fraction =
        static_cast<double>(hdr.points.size()) / static_cast<double>(cfg.samples);
    const double slack = 2.0 / std::sqrt(static_cast<double>(cfg.samples));
    CHECK(fraction >= 1.0 - alpha - slack);
    CHECK(fraction <= 1.0 - alpha + slack);

    // alpha -> 1/M keeps everything (threshold at the minimum score).
    const auto all = mckde_hdr(pts, w, 1.0 / static_cast<double>(cfg.samples), cfg, 99);
    CHECK(all.points.size() == cfg.samples);
}

TEST_CASE("mckde_hdr validates inputs") {
    const std::vector<Vec2> pts = {{0, 0}, {1, 1}};
    const std::vector<double> w = {0.5, 0.5};
    McKdeConfig cfg;
    CHECK_THROWS_AS(mckde_hdr(std::vector<Vec2>{{0, 0}}, std::vector<double>{1.0}, 0.1,
                              cfg, 1),
                    InvalidInput);
    McKdeConfig small = cfg;
    small.samples = 50;
    CHECK_THROWS_AS(mckde_hdr(pts, w, 0.1, small, 1), InvalidInput);
    CHECK_THROWS_AS(mckde_hdr(pts, w, 0.0, cfg, 1), InvalidInput);
    CHECK_THROWS_AS(mckde_hdr(pts, w, 1.0, cfg, 1), InvalidInput);
}

TEST_CASE("duplicated points with proportional weights match uniform weights") {
    const std::vector<Vec2> base = {{0, 0}, {1, 2}, {-1, 1}};
    const std::vector<double> uniform = {1.0 / 3, 1.0 / 3, 1.0 / 3};
    const auto kde_a = WeightedKde::fit(base, uniform, 0.5);

    const std::vector<Vec2> dup = {{0, 0}, {0, 0}, {1, 2}, {1, 2}, {-1, 1}, {-1, 1}};
    const std::vector<double> dup_w(6, 1.0 / 6);
    const auto kde_b = WeightedKde::fit(dup, dup_w, 0.5);

    Rng rng(4);
    for (int i = 0; i < 200; ++i) {
        const Vec2 z{rng.uniform(-3, 3), rng.uniform(-3, 3)};
        CHECK(kde_a.evaluate(z) == doctest::Approx(kde_b.evaluate(z)).epsilon(1e-9));
    }
}

TEST_CASE("mckde_hdr recovers the Gaussian 90% HDR area") {
    CHECK(hdr_hull_area_error(5000, 20000, 1234) <= 0.12);
}

TEST_CASE("mckde_hdr error shrinks with more data and samples") {
    // Median relative error over seeds decreases from (500, 2000) to
    // (5000, 20000).
    std::vector<double> coarse, fine;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        coarse.push_back(hdr_hull_area_error(500, 2000, seed));
        fine.push_back(hdr_hull_area_error(5000, 20000, seed));
    }
    std::sort(coarse.begin(), coarse.end());
    std::sort(fine.begin(), fine.end());
    CHECK(fine[2] < coarse[2]);
}
