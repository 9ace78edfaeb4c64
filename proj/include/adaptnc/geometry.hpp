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

#include <span>
#include <vector>

#include "adaptnc/core.hpp"
#include "adaptnc/vec2.hpp"

namespace adaptnc {

/// Strictly convex hull, vertices counter-clockwise starting from the
/// lowest-then-leftmost vertex.
struct Hull2D {
    std::vector<Vec2> vertices;

    double area() const;
    double diameter() const;
};

/// Shoelace area of a simple polygon (sign-independent).
double polygon_area(std::span<const Vec2> vertices);

/// 2-D QuickHull. Points within 1e-12 of a dividing edge are dropped, so
/// the result is strictly convex. Throws DegenerateInput for fewer than 3
/// points or an all-collinear cloud.
Hull2D quickhull(std::span<const Vec2> points);

/// One facet per hull edge: outward unit normal and its support offset.
PolytopeScore hull_to_polytope(const Hull2D& hull);

struct ClippedPolygon {
    std::vector<Vec2> vertices;
    double area = 0.0;
};

/// Intersection of {z : A_j z <= b_j + q} computed by clipping a bounding
/// box 1e4x the polytope scale against each halfspace. Rows of A must be
/// unit-norm. Empty intersections yield area 0; a collapse below 3 vertices
/// with q > 0 signals DegenerateGeometry.
ClippedPolygon halfspace_area(std::span<const Vec2> normals,
                              std::span<const double> offsets, double q);

}  // namespace adaptnc
