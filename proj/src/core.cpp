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

#include "adaptnc/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "adaptnc/geometry.hpp"

namespace adaptnc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
// Guards ceil(level*n) against IEEE round-up on exactly-representable ranks,
// e.g. 0.9*10 evaluating to 9.000000000000002.
constexpr double kRankEps = 1e-9;
}  // namespace

PolytopeScore::PolytopeScore(std::vector<Vec2> normals, std::vector<double> offsets)
    : normals_(std::move(normals)), offsets_(std::move(offsets)) {
    if (normals_.size() != offsets_.size())
        throw InvalidInput("PolytopeScore: facet normal/offset count mismatch");
    if (normals_.size() < 3)
        throw InvalidInput("PolytopeScore: at least 3 facets required");
    for (std::size_t j = 0; j < normals_.size(); ++j) {
        const double n = normals_[j].norm();
        if (!(n > 0.0))
            throw InvalidInput("PolytopeScore: facet normal with zero norm");
        normals_[j] = normals_[j] / n;
        offsets_[j] /= n;
    }
}

double score_eval(const PolytopeScore& theta, Vec2 y_hat, Vec2 y) {
    const Vec2 z = y - y_hat;
    double best = -kInf;
    const auto& a = theta.normals();
    const auto& b = theta.offsets();
    for (std::size_t j = 0; j < a.size(); ++j)
        best = std::max(best, a[j].dot(z) - b[j]);
    return best;
}

double region_volume(const PolytopeScore& theta, double q) {
    if (std::isinf(q)) return q > 0.0 ? kInf : 0.0;
    return halfspace_area(theta.normals(), theta.offsets(), q).area;
}

RollingWindow::RollingWindow(std::size_t capacity) : capacity_(capacity) {
    if (capacity_ == 0) throw InvalidInput("RollingWindow: capacity must be positive");
}

void RollingWindow::push(double score) {
    if (fifo_.size() == capacity_) {
        const double oldest = fifo_.front();
        fifo_.pop_front();
        auto it = std::lower_bound(sorted_.begin(), sorted_.end(), oldest);
        sorted_.erase(it);
    }
    fifo_.push_back(score);
    sorted_.insert(std::upper_bound(sorted_.begin(), sorted_.end(), score), score);
}

double empirical_quantile(const RollingWindow& window, double level) {
    if (level >= 1.0) return kInf;
    if (level <= 0.0) return -kInf;
    if (window.empty()) throw EmptyWindow("empirical_quantile: window is empty");
    const auto n = window.size();
    auto rank = static_cast<std::size_t>(
        std::ceil(level * static_cast<double>(n) - kRankEps));
    rank = std::clamp<std::size_t>(rank, 1, n);
    return window.sorted()[rank - 1];
}

double beta_of(const RollingWindow& window, double s_t) {
    if (window.empty()) throw EmptyWindow("beta_of: window is empty");
    const auto& s = window.sorted();
    const auto le = std::upper_bound(s.begin(), s.end(), s_t) - s.begin();
    return static_cast<double>(le) / static_cast<double>(s.size());
}

}  // namespace adaptnc
