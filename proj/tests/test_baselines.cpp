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

#include "adaptnc/baselines.hpp"
#include "adaptnc/envs/gaussian.hpp"
#include "adaptnc/envs/gmm.hpp"
#include "adaptnc/metrics.hpp"

using namespace adaptnc;

TEST_CASE("method names round-trip") {
    for (auto kind : {BaselineKind::split_cp, BaselineKind::dtaci_fixed,
                      BaselineKind::adaptnc_no_replay, BaselineKind::adaptnc})
        CHECK(parse_baseline(to_string(kind)) == kind);
    CHECK_THROWS_AS(parse_baseline("bogus"), ConfigError);
}

TEST_CASE("split conformal finite-sample index") {
    // n = 9, alpha = 0.1: ceil(10 * 0.9) = 9 <= 9 passes; n = 8 fails.
    AdaptncConfig cfg;
    cfg.calibration = 9;
    cfg.min_history = 2;
    envs::IidGaussianStream ok(9 + 50, 3);
    CHECK_NOTHROW(split_cp_run(ok, 0.1, 9, cfg.mckde, 3));

    envs::IidGaussianStream fail(8 + 50, 3);
    CHECK_THROWS_AS(split_cp_run(fail, 0.1, 8, cfg.mckde, 3), InsufficientCalibration);
}

TEST_CASE("split conformal is constant over the run and never vacuous") {
    AdaptncConfig cfg;
    envs::IidGaussianStream stream(500 + 2000, 5);
    const auto result = split_cp_run(stream, 0.1, 500, cfg.mckde, 5);
    REQUIRE(result.records.size() == 2000);
    const double q = result.records.front().q;
    const double volume = result.records.front().volume;
    for (const auto& r : result.records) {
        CHECK(r.q == q);
        CHECK(r.volume == volume);
        CHECK_FALSE(r.vacuous);
        CHECK(r.theta_version == 0);
    }
}

TEST_CASE("split conformal covers on an exchangeable stream") {
    AdaptncConfig cfg;
    envs::IidGaussianStream stream(2000 + 20000, 11);
    const auto result = split_cp_run(stream, 0.1, 2000, cfg.mckde, 11);
    const double coverage = global_coverage(result.records);
    CHECK(coverage >= 0.88);
    CHECK(coverage <= 0.92);
}

TEST_CASE("dtaci_fixed equals adaptnc with adaptation disabled, bitwise") {
    AdaptncConfig cfg;
    cfg.calibration = 200;
    cfg.window = 100;
    cfg.mckde.samples = 1000;

    envs::GmmStreamConfig gc;
    gc.length = 1500;
    gc.warmup = cfg.calibration;

    envs::GmmStream a(gc, 21);
    const auto fixed = dtaci_fixed_run(a, cfg, 21);

    AdaptncConfig never = cfg;
    never.adapt_interval = kNeverAdapt;
    envs::GmmStream b(gc, 21);
    const auto manual = run(b, never, 21);

    REQUIRE(fixed.records.size() == manual.records.size());
    for (std::size_t i = 0; i < fixed.records.size(); ++i) {
        CHECK(fixed.records[i].alpha_bar == manual.records[i].alpha_bar);
        CHECK(fixed.records[i].q == manual.records[i].q);
        CHECK(fixed.records[i].covered == manual.records[i].covered);
        CHECK(fixed.records[i].volume == manual.records[i].volume);
    }
    CHECK(fixed.stream_checksum == manual.stream_checksum);
    CHECK(fixed.theta_versions == 1);
}

TEST_CASE("gmm shift: fixed-score dtaci needs more volume than adaptnc") {
    AdaptncConfig cfg;
    cfg.calibration = 500;
    envs::GmmStreamConfig gc;
    gc.warmup = cfg.calibration;
    envs::GmmStream a(gc, 2), b(gc, 2);
    const auto adaptive = run_method(BaselineKind::adaptnc, a, cfg, 2);
    const auto fixed = run_method(BaselineKind::dtaci_fixed, b, cfg, 2);
    const auto sa = summarize(adaptive.records, 100);
    const auto sf = summarize(fixed.records, 100);
    CHECK(sa.global_coverage >= 0.85);
    CHECK(sa.global_coverage <= 0.95);
    CHECK(sf.global_coverage >= 0.85);
    CHECK(sf.global_coverage <= 0.95);
    CHECK(sa.mean_volume_covered < sf.mean_volume_covered);
}

TEST_CASE("all runners share the step-record schema") {
    AdaptncConfig cfg;
    cfg.calibration = 150;
    cfg.window = 80;
    cfg.mckde.samples = 1000;
    for (auto kind : {BaselineKind::split_cp, BaselineKind::dtaci_fixed,
                      BaselineKind::adaptnc_no_replay, BaselineKind::adaptnc}) {
        envs::IidGaussianStream stream(150 + 500, 77);
        const auto result = run_method(kind, stream, cfg, 77);
        REQUIRE(result.records.size() == 500);
        // The metrics engine accepts every runner's output unchanged.
        const auto summary = summarize(result.records, 50);
        CHECK(summary.global_coverage >= 0.0);
        CHECK(summary.global_coverage <= 1.0);
        long prev = 149;
        for (const auto& r : result.records) {
            CHECK(r.t == prev + 1);
            prev = r.t;
        }
    }
}

TEST_CASE("identical seeds yield identical stream checksums across methods") {
    AdaptncConfig cfg;
    cfg.calibration = 150;
    cfg.window = 80;
    cfg.mckde.samples = 1000;
    envs::GmmStreamConfig gc;
    gc.length = 800;
    gc.warmup = cfg.calibration;
    envs::GmmStream a(gc, 5), b(gc, 5);
    const auto split = run_method(BaselineKind::split_cp, a, cfg, 5);
    const auto dtaci = run_method(BaselineKind::dtaci_fixed, b, cfg, 5);
    CHECK(split.stream_checksum == dtaci.stream_checksum);
}
