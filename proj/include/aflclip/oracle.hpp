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
#include <cstdint>
#include <utility>
#include <vector>

#include "aflclip/clip_result.hpp"
#include "aflclip/core.hpp"
#include "aflclip/polyhedron.hpp"
#include "aflclip/semidual.hpp"

namespace aflclip {

// Reference clipper with no filtering and no half-space logic: tests the line
// against every facet and folds the hits. Deliberately a different
// formulation from the Cyrus-Beck interval so the two can check each other.
inline ClipResult clip_line_exhaustive(const ConvexPolyhedron& poly, const Line3& line,
                                       ClipMode mode = ClipMode::Line) {
    std::vector<std::pair<double, uint32_t>> hits;
    for (uint32_t i = 0; i < poly.facet_count(); ++i) {
        if (const auto t = line_triangle_intersect(line, poly.facets[i], poly.vertices)) {
            hits.emplace_back(*t, i);
        }
    }
    if (hits.empty()) return {};
    std::pair<double, uint32_t> lo = hits.front(), hi = hits.front();
    for (const auto& h : hits) {
        if (h.first < lo.first) lo = h;
        if (h.first > hi.first) hi = h;
    }
    return detail::classify_interval(line, lo.first, hi.first, lo.second, hi.second, mode);
}

// Sampling reference for the exact zone predicate: probes a dense grid of
// (slope, offset) pairs across the cell, corners included, and reports
// whether any sampled line stabs the triangle. Can only under-approximate
// the exact test.
inline bool zone_interferes_sampled(const std::array<Vec2, 3>& tri, const DualCell& cell,
                                    DualKind kind, int grid_density = 64) {
    const int n = grid_density;
    for (int i = 0; i < n; ++i) {
        const double s = cell.slope_lo + (cell.slope_hi - cell.slope_lo) * i / (n - 1);
        for (int j = 0; j < n; ++j) {
            const double o = cell.offset_lo + (cell.offset_hi - cell.offset_lo) * j / (n - 1);
            bool all_pos = true, all_neg = true;
            for (const Vec2& p : tri) {
                const double f = (kind == DualKind::KQ) ? p.v - s * p.u - o : p.u - s * p.v - o;
                all_pos = all_pos && f > 0.0;
                all_neg = all_neg && f < 0.0;
            }
            if (!(all_pos || all_neg)) return true;  // mixed signs or a zero: line stabs
        }
    }
    return false;
}

}  // namespace aflclip
