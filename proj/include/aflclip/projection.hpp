// Copyright 2026 The aflclip Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cmath>

#include "aflclip/core.hpp"
#include "aflclip/errors.hpp"

namespace aflclip {

// 2-D line a*u + b*v + c = 0 in one of the canonical retained-coordinate
// frames (see project() in core.hpp).
struct Line2D {
    double a = 0.0, b = 0.0, c = 0.0;
};

// One axis-parallel plane containing the query line, plus the projection
// direction that turns it into a 2-D line.
struct PlaneSelection {
    Axis proj_axis;  // project along this axis; plane normal is orthogonal to it
    Plane plane;
};

struct PlaneChoice {
    Axis dominant;
    std::array<PlaneSelection, 2> sel;
};

// Picks the two planes that define the line, excluding the cross product with
// the dominant-axis basis vector (it degenerates as the direction aligns with
// that axis). Ties break X before Y before Z.
inline PlaneChoice select_planes(const Line3& line) {
    const Vec3& s = line.dir;
    if (s.x == 0.0 && s.y == 0.0 && s.z == 0.0) {
        throw ZeroDirectionError("line direction must be non-zero");
    }
    const double ax = std::abs(s.x), ay = std::abs(s.y), az = std::abs(s.z);

    constexpr Vec3 ex{1.0, 0.0, 0.0}, ey{0.0, 1.0, 0.0}, ez{0.0, 0.0, 1.0};
    PlaneChoice pc;
    if (ax >= ay && ax >= az) {
        pc.dominant = Axis::X;
        pc.sel[0] = {Axis::Y, {cross(s, ey), 0.0}};
        pc.sel[1] = {Axis::Z, {cross(s, ez), 0.0}};
    } else if (ay >= az) {
        pc.dominant = Axis::Y;
        pc.sel[0] = {Axis::Z, {cross(s, ez), 0.0}};
        pc.sel[1] = {Axis::X, {cross(s, ex), 0.0}};
    } else {
        pc.dominant = Axis::Z;
        pc.sel[0] = {Axis::X, {cross(s, ex), 0.0}};
        pc.sel[1] = {Axis::Y, {cross(s, ey), 0.0}};
    }
    for (auto& sel : pc.sel) sel.plane.d = -dot(sel.plane.n, line.anchor);
    return pc;
}

// Drops the projection axis of an axis-parallel plane, leaving its trace as a
// 2-D line in the retained coordinate pair.
inline Line2D project_to_line2d(const Plane& plane, Axis proj_axis) {
    const Vec3& n = plane.n;
    double along = 0.0;
    Line2D l;
    switch (proj_axis) {
        case Axis::X:
            along = n.x;
            l = {n.y, n.z, plane.d};
            break;
        case Axis::Y:
            along = n.y;
            l = {n.z, n.x, plane.d};
            break;
        default:
            along = n.z;
            l = {n.x, n.y, plane.d};
            break;
    }
    if (std::abs(along) > 1e-12 * norm(n)) {
        throw NotAxisParallelError("plane normal has a component along the projection axis");
    }
    return l;
}

}  // namespace aflclip
