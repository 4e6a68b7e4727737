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

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>

#include "aflclip/afl.hpp"
#include "aflclip/clip_result.hpp"
#include "aflclip/cyrus_beck.hpp"
#include "aflclip/polyhedron.hpp"
#include "aflclip/projection.hpp"
#include "aflclip/semidual.hpp"

namespace aflclip {

// Broad-phase counters for one query.
struct QueryStats {
    uint32_t omega1 = 0;        // candidates from the first plane's cell
    uint32_t omega2 = 0;        // candidates from the second plane's cell
    uint32_t omega = 0;         // after intersection
    uint32_t detail_tests = 0;  // exact facet tests actually run
};

// Exact narrow phase: intersects the line with each candidate facet and folds
// the hits into an interval.
inline ClipResult clip_against_facets(const ConvexPolyhedron& poly, const Line3& line,
                                      std::span<const uint32_t> candidates,
                                      ClipMode mode = ClipMode::Line) {
    double t_min = std::numeric_limits<double>::infinity();
    double t_max = -std::numeric_limits<double>::infinity();
    std::optional<uint32_t> entry, exit;
    bool any = false;
    for (uint32_t id : candidates) {
        const auto t = line_triangle_intersect(line, poly.facets[id], poly.vertices);
        if (!t) continue;
        any = true;
        if (*t < t_min) {
            t_min = *t;
            entry = id;
        }
        if (*t > t_max) {
            t_max = *t;
            exit = id;
        }
    }
    if (!any) return {};
    return detail::classify_interval(line, t_min, t_max, entry, exit, mode);
}

// The preprocessed clipper: select the two planes, look up their grid cells,
// AND the two facet sets, and run the exact test on the survivors. Every step
// before the narrow phase costs O(1) in the facet count.
inline ClipResult clip_line(const PreprocessedPolyhedron& prep, const Line3& line,
                            ClipMode mode = ClipMode::Line, QueryStats* stats = nullptr) {
    const PlaneChoice pc = select_planes(line);

    const FacetBitset* omega_parts[2] = {nullptr, nullptr};
    for (int i = 0; i < 2; ++i) {
        const PlaneSelection& sel = pc.sel[i];
        const Line2D l2 = project_to_line2d(sel.plane, sel.proj_axis);
        // Both grids of one axis share the frame; the form decides the grid.
        const BoundingFrame& frame = prep.grid(sel.proj_axis, DualKind::KQ).frame;
        const SemidualForm form = to_semidual(l2, frame);
        const SemidualGrid& grid = prep.grid(sel.proj_axis, form.kind);
        const auto idx = cell_index(form, grid.frame, grid.spec);
        if (!idx) {
            if (stats) {
                *stats = {};
                if (omega_parts[0]) stats->omega1 = omega_parts[0]->count();
            }
            return {};  // the line cannot reach the projected polyhedron
        }
        omega_parts[i] = &grid.cell(idx->first, idx->second);
    }

    // One fused pass over the packed words: AND, then the narrow phase runs
    // inline on each surviving facet. No per-query allocation.
    const auto w1 = omega_parts[0]->words();
    const auto w2 = omega_parts[1]->words();
#if defined(__GNUC__) || defined(__clang__)
    // Both cell streams come from large tables; start the fetches together so
    // their memory latencies overlap instead of serializing.
    for (std::size_t b = 0; b < w1.size(); b += 8) {
        __builtin_prefetch(w1.data() + b);
        __builtin_prefetch(w2.data() + b);
    }
#endif
    const ConvexPolyhedron& poly = prep.poly;
    double t_min = std::numeric_limits<double>::infinity();
    double t_max = -std::numeric_limits<double>::infinity();
    std::optional<uint32_t> entry, exit;
    uint32_t omega_count = 0;
    for (std::size_t wi = 0; wi < w1.size(); ++wi) {
        uint64_t w = w1[wi] & w2[wi];
        while (w != 0) {
            const auto id = static_cast<uint32_t>(wi * 64 + std::countr_zero(w));
            w &= w - 1;
            ++omega_count;
            const auto t = line_triangle_intersect(line, poly.facets[id], poly.vertices);
            if (!t) continue;
            if (*t < t_min) {
                t_min = *t;
                entry = id;
            }
            if (*t > t_max) {
                t_max = *t;
                exit = id;
            }
        }
    }
    if (stats) {
        uint32_t c1 = 0, c2 = 0;
        for (std::size_t wi = 0; wi < w1.size(); ++wi) {
            c1 += static_cast<uint32_t>(std::popcount(w1[wi]));
            c2 += static_cast<uint32_t>(std::popcount(w2[wi]));
        }
        stats->omega1 = c1;
        stats->omega2 = c2;
        stats->omega = omega_count;
        stats->detail_tests = omega_count;
    }
    if (!entry && !exit) return {};
    return detail::classify_interval(line, t_min, t_max, entry, exit, mode);
}

}  // namespace aflclip
