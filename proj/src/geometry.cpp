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

#include "adaptnc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace adaptnc {

namespace {

// Points closer than this to a dividing edge are treated as on the hull
// boundary and dropped.
constexpr double kEdgeTol = 1e-12;

struct HullBuilder {
    std::span<const Vec2> pts;
    std::vector<std::size_t> hull;  // indices, in chain order

    // Recursively adds the points of `cand` lying strictly outside segment
    // a->b (left side), between a and b in the final chain.
    void expand(std::size_t ia, std::size_t ib, const std::vector<std::size_t>& cand) {
        if (cand.empty()) return;
        const Vec2 a = pts[ia], b = pts[ib];
        const double len = (b - a).norm();
        std::size_t far = cand.front();
        double best = -1.0;
        for (std::size_t i : cand) {
            const double d = orient(a, b, pts[i]) / len;
            if (d > best) {
                best = d;
                far = i;
            }
        }
        const Vec2 f = pts[far];
        std::vector<std::size_t> left_af, left_fb;
        const double len_af = (f - a).norm();
        const double len_fb = (b - f).norm();
        for (std::size_t i : cand) {
            if (i == far) continue;
            if (orient(a, f, pts[i]) / len_af > kEdgeTol)
                left_af.push_back(i);
            else if (orient(f, b, pts[i]) / len_fb > kEdgeTol)
                left_fb.push_back(i);
        }
        expand(ia, far, left_af);
        hull.push_back(far);
        expand(far, ib, left_fb);
    }
};

}  // namespace

double polygon_area(std::span<const Vec2> vertices) {
    if (vertices.size() < 3) return 0.0;
    double twice = 0.0;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const Vec2 p = vertices[i];
        const Vec2 q = vertices[(i + 1) % vertices.size()];
        twice += p.cross(q);
    }
    return std::abs(twice) * 0.5;
}

double Hull2D::area() const { return polygon_area(vertices); }

double Hull2D::diameter() const {
    double best = 0.0;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (std::size_t j = i + 1; j < vertices.size(); ++j)
            best = std::max(best, (vertices[i] - vertices[j]).norm());
    return best;
}

Hull2D quickhull(std::span<const Vec2> points) {
    if (points.size() < 3)
        throw DegenerateInput("quickhull: need at least 3 points");

    std::size_t imin = 0, imax = 0;
    for (std::size_t i = 1; i < points.size(); ++i) {
        const Vec2 p = points[i];
        const Vec2 lo = points[imin], hi = points[imax];
        if (p.x < lo.x || (p.x == lo.x && p.y < lo.y)) imin = i;
        if (p.x > hi.x || (p.x == hi.x && p.y > hi.y)) imax = i;
    }
    const Vec2 a = points[imin], b = points[imax];
    const double len = (b - a).norm();
    if (!(len > kEdgeTol))
        throw DegenerateInput("quickhull: all points coincide");

    std::vector<std::size_t> upper, lower;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i == imin || i == imax) continue;
        const double d = orient(a, b, points[i]) / len;
        if (d > kEdgeTol)
            upper.push_back(i);
        else if (d < -kEdgeTol)
            lower.push_back(i);
    }
    if (upper.empty() && lower.empty())
        throw DegenerateInput("quickhull: points are collinear");

    HullBuilder builder{points, {}};
    builder.hull.push_back(imin);
    builder.expand(imin, imax, upper);
    builder.hull.push_back(imax);
    builder.expand(imax, imin, lower);

    Hull2D hull;
    hull.vertices.reserve(builder.hull.size());
    for (std::size_t i : builder.hull) hull.vertices.push_back(points[i]);

    // The chain above walks the boundary clockwise (left-of-edge outward);
    // flip to counter-clockwise if needed.
    double twice = 0.0;
    for (std::size_t i = 0; i < hull.vertices.size(); ++i)
        twice += hull.vertices[i].cross(hull.vertices[(i + 1) % hull.vertices.size()]);
    if (twice < 0.0) std::reverse(hull.vertices.begin(), hull.vertices.end());

    // Canonical start: lowest y, then lowest x.
    auto start = std::min_element(
        hull.vertices.begin(), hull.vertices.end(), [](Vec2 p, Vec2 q) {
            return p.y < q.y || (p.y == q.y && p.x < q.x);
        });
    std::rotate(hull.vertices.begin(), start, hull.vertices.end());

    if (hull.vertices.size() < 3)
        throw DegenerateInput("quickhull: degenerate hull");
    return hull;
}

PolytopeScore hull_to_polytope(const Hull2D& hull) {
    const auto& v = hull.vertices;
    std::vector<Vec2> normals;
    std::vector<double> offsets;
    normals.reserve(v.size());
    offsets.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2 p = v[i];
        const Vec2 q = v[(i + 1) % v.size()];
        const Vec2 d = q - p;
        // Outward normal of a CCW polygon is the right-hand perpendicular.
        const Vec2 n = Vec2{d.y, -d.x}.normalized();
        normals.push_back(n);
        offsets.push_back(n.dot(p));
    }
    return PolytopeScore(std::move(normals), std::move(offsets));
}

ClippedPolygon halfspace_area(std::span<const Vec2> normals,
                              std::span<const double> offsets, double q) {
    if (normals.size() != offsets.size() || normals.size() < 3)
        throw InvalidInput("halfspace_area: malformed facet list");

    double scale = 1.0;
    for (double b : offsets) scale = std::max(scale, std::abs(b + q));
    const double half = 1e4 * scale;

    std::vector<Vec2> poly = {{-half, -half}, {half, -half}, {half, half}, {-half, half}};
    std::vector<Vec2> next;
    for (std::size_t j = 0; j < normals.size() && !poly.empty(); ++j) {
        const Vec2 n = normals[j];
        const double c = offsets[j] + q;
        next.clear();
        for (std::size_t i = 0; i < poly.size(); ++i) {
            const Vec2 p = poly[i];
            const Vec2 r = poly[(i + 1) % poly.size()];
            const double dp = c - n.dot(p);
            const double dr = c - n.dot(r);
            if (dp >= 0.0) next.push_back(p);
            if ((dp >= 0.0) != (dr >= 0.0))
                next.push_back(p + (r - p) * (dp / (dp - dr)));
        }
        poly = next;
    }

    // Collapse duplicate vertices before judging degeneracy.
    std::vector<Vec2> dedup;
    for (const Vec2& p : poly) {
        if (dedup.empty() || (p - dedup.back()).norm() > 1e-12 * scale)
            dedup.push_back(p);
    }
    if (dedup.size() > 1 && (dedup.front() - dedup.back()).norm() <= 1e-12 * scale)
        dedup.pop_back();

    if (dedup.size() < 3) {
        if (q > 0.0)
            throw DegenerateGeometry(
                "halfspace_area: intersection collapsed for inflated polytope");
        return {{}, 0.0};
    }
    ClippedPolygon out;
    out.area = polygon_area(dedup);
    out.vertices = std::move(dedup);
    return out;
}

}  // namespace adaptnc
