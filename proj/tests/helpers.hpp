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
#include <optional>
#include <vector>

#include "aflclip/aflclip.hpp"

namespace testutil {

using namespace aflclip;

inline ConvexPolyhedron make_tetrahedron() {
    return validate_convex({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
                           {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

inline ConvexPolyhedron make_unit_cube() {
    return validate_convex(
        {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}},
        {{0, 1, 2}, {0, 2, 3},    // z = 0
         {4, 5, 6}, {4, 6, 7},    // z = 1
         {0, 1, 5}, {0, 5, 4},    // y = 0
         {1, 2, 6}, {1, 6, 5},    // x = 1
         {2, 3, 7}, {2, 7, 6},    // y = 1
         {3, 0, 4}, {3, 4, 7}});  // x = 0
}

// Independent triangle-intersection reference (Cramer's rule on the full
// 3x3 system), used to cross-check the plane-then-barycentric routine.
inline std::optional<double> moller_trumbore(const Line3& line, const Point3& v0,
                                             const Point3& v1, const Point3& v2,
                                             double eps = 1e-10) {
    const Vec3 e1 = v1 - v0;
    const Vec3 e2 = v2 - v0;
    const Vec3 pvec = cross(line.dir, e2);
    const double det = dot(e1, pvec);
    const double scale = norm(line.dir) * norm(e1) * norm(e2);
    if (std::abs(det) <= 1e-12 * scale) return std::nullopt;
    const double inv = 1.0 / det;
    const Vec3 tvec = line.anchor - v0;
    const double u = dot(tvec, pvec) * inv;
    if (u < -eps || u > 1.0 + eps) return std::nullopt;
    const Vec3 qvec = cross(tvec, e1);
    const double v = dot(line.dir, qvec) * inv;
    if (v < -eps || u + v > 1.0 + eps) return std::nullopt;
    return dot(e2, qvec) * inv;
}

// Independent 2-D stab reference: does the line v = s*u + o (KQ) or
// u = s*v + o (MP) cross any edge of the triangle, treated as segments?
inline bool line_stabs_triangle_2d(const std::array<Vec2, 3>& tri, double slope, double offset,
                                   DualKind kind) {
    const auto value = [&](const Vec2& p) {
        return kind == DualKind::KQ ? p.v - slope * p.u - offset : p.u - slope * p.v - offset;
    };
    for (int e = 0; e < 3; ++e) {
        const Vec2& p = tri[static_cast<std::size_t>(e)];
        const Vec2& q = tri[static_cast<std::size_t>((e + 1) % 3)];
        const double fp = value(p);
        const double fq = value(q);
        if (fp == 0.0 || fq == 0.0) return true;
        if ((fp < 0.0) != (fq < 0.0)) {
            const double tau = fp / (fp - fq);  // intersection parameter on the edge
            if (tau >= 0.0 && tau <= 1.0) return true;
        }
    }
    return false;
}

// Re-derives the candidate set of a query from the public pieces, for tests
// that need to inspect broad-phase membership directly.
inline std::optional<FacetBitset> lookup_omega(const PreprocessedPolyhedron& prep,
                                               const Line3& line) {
    const PlaneChoice pc = select_planes(line);
    std::optional<FacetBitset> acc;
    for (const PlaneSelection& sel : pc.sel) {
        const Line2D l2 = project_to_line2d(sel.plane, sel.proj_axis);
        const BoundingFrame& frame = prep.grid(sel.proj_axis, DualKind::KQ).frame;
        const SemidualForm form = to_semidual(l2, frame);
        const SemidualGrid& grid = prep.grid(sel.proj_axis, form.kind);
        const auto idx = cell_index(form, grid.frame, grid.spec);
        if (!idx) return std::nullopt;
        const FacetBitset& cell = grid.cell(idx->first, idx->second);
        if (acc) {
            *acc &= cell;
        } else {
            acc = cell;
        }
    }
    return acc;
}

// Same equality notion the acceptance criteria use: kinds match and the
// parameters match to relative tolerance; a Point on one side agrees with a
// sub-tolerance segment on the other.
inline bool results_equivalent(const ClipResult& a, const ClipResult& b, double rel = 1e-9) {
    const auto near = [&](double x, double y) {
        return std::abs(x - y) <= rel * (1.0 + std::max(std::abs(x), std::abs(y)));
    };
    if (a.kind != b.kind) {
        const auto graze = [&](const ClipResult& pt, const ClipResult& seg) {
            return pt.kind == ClipKind::Point && seg.kind == ClipKind::Segment &&
                   near(seg.t_in, seg.t_out) && near(pt.t_in, 0.5 * (seg.t_in + seg.t_out));
        };
        return graze(a, b) || graze(b, a);
    }
    if (a.kind == ClipKind::Empty) return true;
    return near(a.t_in, b.t_in) && near(a.t_out, b.t_out);
}

}  // namespace testutil
