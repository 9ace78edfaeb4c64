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

#include <cstddef>
#include <deque>
#include <vector>

#include "adaptnc/errors.hpp"
#include "adaptnc/vec2.hpp"

namespace adaptnc {

/// One timestep of an online regression stream: features, the point
/// prediction made before the truth arrived, and the realized truth.
struct Observation {
    long t = 0;
    std::vector<double> features;
    Vec2 y;      ///< true outcome
    Vec2 y_hat;  ///< point prediction h(x)
};

inline Vec2 residual(const Observation& obs) { return obs.y - obs.y_hat; }

/// Convex polytope {z : A z <= b} in residual space, one row per facet.
/// Rows are stored unit-normalized so that the score is a signed offset in
/// meters and a threshold q inflates every facet isotropically.
class PolytopeScore {
public:
    PolytopeScore(std::vector<Vec2> normals, std::vector<double> offsets);

    std::size_t facet_count() const { return normals_.size(); }
    const std::vector<Vec2>& normals() const { return normals_; }
    const std::vector<double>& offsets() const { return offsets_; }

private:
    std::vector<Vec2> normals_;
    std::vector<double> offsets_;
};

/// Signed polytope distance: max_j A_j (y - y_hat) - b_j. Negative inside
/// the hull, zero on its boundary, positive outside.
double score_eval(const PolytopeScore& theta, Vec2 y_hat, Vec2 y);

/// Area in m^2 of {z : A z <= b + q 1}. Returns 0 for an empty region and
/// +inf for q = +inf. Throws DegenerateGeometry when the intersection
/// collapses below 3 vertices for q > 0 (a valid bounded polytope cannot
/// shrink under inflation).
double region_volume(const PolytopeScore& theta, double q);

/// FIFO window of the last W nonconformity scores. Keeps a sorted copy so
/// order statistics and CDF ranks are O(log W) lookups.
class RollingWindow {
public:
    explicit RollingWindow(std::size_t capacity);

    void push(double score);
    std::size_t size() const { return fifo_.size(); }
    std::size_t capacity() const { return capacity_; }
    bool empty() const { return fifo_.empty(); }
    const std::deque<double>& scores() const { return fifo_; }
    const std::vector<double>& sorted() const { return sorted_; }

private:
    std::size_t capacity_;
    std::deque<double> fifo_;
    std::vector<double> sorted_;
};

/// The ceil(level*n)-th smallest stored score (1-indexed). Levels >= 1
/// saturate to +inf, levels <= 0 to -inf; those saturations never throw.
double empirical_quantile(const RollingWindow& window, double level);

/// Empirical CDF rank of s_t: #{s_i <= s_t} / n. When s_t is stored in the
/// window this is the smallest level whose empirical quantile covers it.
double beta_of(const RollingWindow& window, double s_t);

/// Prediction region C = {y : score(y) <= q} centered on a point prediction.
struct PredictionRegion {
    PolytopeScore theta;
    Vec2 center;
    double q = 0.0;

    bool contains(Vec2 y) const { return score_eval(theta, center, y) <= q; }
    double volume() const { return region_volume(theta, q); }
};

}  // namespace adaptnc
