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
#include <limits>
#include <vector>

#include "adaptnc/metrics.hpp"
#include "adaptnc/rng.hpp"

using namespace adaptnc;

namespace {

std::vector<StepRecord> make_records(const std::vector<int>& covered) {
    std::vector<StepRecord> records(covered.size());
    for (std::size_t i = 0; i < covered.size(); ++i) {
        records[i].t = static_cast<long>(i);
        records[i].covered = covered[i] != 0;
        records[i].volume = 1.0;
        records[i].q = 0.5;
    }
    return records;
}

}  // namespace

TEST_CASE("global_coverage basics") {
    CHECK(global_coverage(make_records({1, 1, 1, 1})) == doctest::Approx(1.0));
    CHECK(global_coverage(make_records({1, 0, 1, 0, 1, 0})) == doctest::Approx(0.5));
    CHECK_THROWS_AS(global_coverage(std::vector<StepRecord>{}), EmptyRun);
}

TEST_CASE("local_coverage constant series") {
    const auto records = make_records(std::vector<int>(500, 1));
    for (double v : local_coverage(records, 100)) CHECK(v == doctest::Approx(1.0));
}

TEST_CASE("local_coverage single miss dips by exactly 1/w") {
    std::vector<int> covered(1000, 1);
    covered[500] = 0;
    const auto series = local_coverage(make_records(covered), 100);
    // Interior windows containing the miss average 99/100.
    CHECK(series[500] == doctest::Approx(0.99));
    CHECK(series[460] == doctest::Approx(0.99));
    CHECK(series[540] == doctest::Approx(0.99));
    CHECK(series[300] == doctest::Approx(1.0));
    CHECK(series[700] == doctest::Approx(1.0));
    double lowest = 1.0;
    for (double v : series) lowest = std::min(lowest, v);
    CHECK(lowest == doctest::Approx(0.99));
}

TEST_CASE("local_coverage window validation") {
    const auto records = make_records({1, 1, 1});
    CHECK_THROWS_AS(local_coverage(records, 4), WindowTooLarge);
    CHECK_NOTHROW(local_coverage(records, 3));
}

TEST_CASE("local series mean matches global within edge truncation") {
    Rng rng(17);
    std::vector<int> covered(2000);
    for (auto& c : covered) c = rng.uniform() < 0.9 ? 1 : 0;
    const auto records = make_records(covered);
    const std::size_t w = 100;
    const auto series = local_coverage(records, w);
    double mean = 0.0;
    for (double v : series) mean += v;
    mean /= static_cast<double>(series.size());
    const double global = global_coverage(records);
    CHECK(std::abs(mean - global) <=
          static_cast<double>(w) / static_cast<double>(records.size()));
}

TEST_CASE("volume_stats separates vacuous from covered") {
    std::vector<StepRecord> records(10);
    for (std::size_t i = 0; i < records.size(); ++i) {
        records[i].t = static_cast<long>(i);
        records[i].covered = true;
        records[i].volume = 2.0;
    }
    auto stats = volume_stats(records);
    CHECK(stats.mean_volume_covered == doctest::Approx(2.0));
    CHECK(stats.vacuous_fraction == doctest::Approx(0.0));

    // Two vacuous steps: excluded from the volume mean, counted in the rate.
    records[3].vacuous = true;
    records[3].volume = std::numeric_limits<double>::infinity();
    records[7].vacuous = true;
    records[7].volume = std::numeric_limits<double>::infinity();
    records[5].covered = false;
    stats = volume_stats(records);
    CHECK(stats.mean_volume_covered == doctest::Approx(2.0));
    CHECK(stats.vacuous_fraction == doctest::Approx(0.2));

    // All vacuous: volume undefined, flagged as NaN.
    for (auto& r : records) {
        r.vacuous = true;
        r.covered = true;
        r.volume = std::numeric_limits<double>::infinity();
    }
    stats = volume_stats(records);
    CHECK(std::isnan(stats.mean_volume_covered));
    CHECK(stats.vacuous_fraction == doctest::Approx(1.0));
}

TEST_CASE("metrics are pure functions of records") {
    Rng rng(23);
    std::vector<int> covered(500);
    for (auto& c : covered) c = rng.uniform() < 0.85 ? 1 : 0;
    const auto records = make_records(covered);
    const auto a = summarize(records, 50);
    const auto b = summarize(records, 50);
    CHECK(a.global_coverage == b.global_coverage);
    CHECK(a.local_coverage_series == b.local_coverage_series);
    CHECK(a.local_std == b.local_std);
    CHECK(a.vacuous_fraction == b.vacuous_fraction);
}
