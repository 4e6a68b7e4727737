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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "aflclip/core.hpp"
#include "aflclip/errors.hpp"
#include "aflclip/projection.hpp"

namespace aflclip {

// A 2-D line is mapped to a point in one of two bounded dual rectangles:
//   v = k*u + q  with |k| <= 1   (KQ form)
//   u = m*v + p  with |m| <= 1   (MP form)
// Together the two forms cover every line direction. Offsets are expressed in
// coordinates centered on the scene's bounding square so they are comparable
// to its half-extent: a line with |slope| <= 1 that stabs the square
// [-a,a]^2 has |offset| <= 2a, which bounds the dual rectangle to
// [-1,1] x [-2a,2a].
enum class DualKind : int { KQ = 0, MP = 1 };

inline const char* dual_kind_name(DualKind k) { return k == DualKind::KQ ? "KQ" : "MP"; }

struct SemidualForm {
    DualKind kind = DualKind::KQ;
    double slope = 0.0;   // k or m
    double offset = 0.0;  // q or p, in frame-centered coordinates
};

// Square bounding frame of a projected vertex set. The half-extent gets a
// tiny inflation so every stabbing line's offset lies strictly inside the
// dual domain.
struct BoundingFrame {
    Vec2 center;
    double a = 0.0;
    bool operator==(const BoundingFrame&) const = default;
};

struct GridSpec {
    uint32_t n_slope = 1;
    uint32_t n_offset = 1;
    bool operator==(const GridSpec&) const = default;
};

// One grid cell as a rectangle in dual coordinates.
struct DualCell {
    double slope_lo = 0.0, slope_hi = 0.0;
    double offset_lo = 0.0, offset_hi = 0.0;
};

inline BoundingFrame bounding_frame(std::span<const Vec2> pts) {
    if (pts.size() < 3) throw std::invalid_argument("bounding_frame needs at least 3 points");
    double ulo = pts[0].u, uhi = pts[0].u, vlo = pts[0].v, vhi = pts[0].v;
    for (const Vec2& p : pts) {
        ulo = std::min(ulo, p.u);
        uhi = std::max(uhi, p.u);
        vlo = std::min(vlo, p.v);
        vhi = std::max(vhi, p.v);
    }
    const double half = std::max(0.5 * (uhi - ulo), 0.5 * (vhi - vlo));
    if (half < 1e-12) {
        throw DegenerateProjectionError("projected vertices collapse to a point");
    }
    return {{0.5 * (ulo + uhi), 0.5 * (vlo + vhi)}, half * (1.0 + tol::frame_inflate)};
}

// Converts a*u + b*v + c = 0 to its semidual point. |a| <= |b| picks the KQ
// form, so the |k| = |m| = 1 tie lands deterministically in KQ.
inline SemidualForm to_semidual(const Line2D& l, const BoundingFrame& f) {
    if (std::abs(l.a) <= std::abs(l.b)) {
        const double k = -l.a / l.b;
        const double q = -l.c / l.b + k * f.center.u - f.center.v;
        return {DualKind::KQ, k, q};
    }
    const double m = -l.b / l.a;
    const double p = -l.c / l.a + m * f.center.v - f.center.u;
    return {DualKind::MP, m, p};
}

// Uniform bucketing of the dual rectangle [-1,1] x [-2a,2a]. Lines whose
// offset falls outside the domain cannot intersect the projected polyhedron,
// so absence is an early miss.
inline std::optional<std::pair<uint32_t, uint32_t>> cell_index(const SemidualForm& form,
                                                               const BoundingFrame& frame,
                                                               const GridSpec& spec) {
    const double a2 = 2.0 * frame.a;
    if (std::abs(form.offset) > a2) return std::nullopt;
    const auto clamp_to = [](double raw, uint32_t n) {
        const auto i = static_cast<long long>(std::floor(raw));
        return static_cast<uint32_t>(std::clamp<long long>(i, 0, static_cast<long long>(n) - 1));
    };
    const uint32_t ii = clamp_to((form.offset + a2) * spec.n_offset / (2.0 * a2), spec.n_offset);
    const uint32_t jj = clamp_to((form.slope + 1.0) * spec.n_slope / 2.0, spec.n_slope);
    return std::make_pair(ii, jj);
}

// Exact interference test between a projected (frame-centered) triangle and a
// dual-space cell: does any line of the cell's zone stab the triangle?
//
// For the KQ form define f_i(k, q) = v_i - k*u_i - q per vertex; a line stabs
// the triangle iff the three f_i are neither all strictly positive nor all
// strictly negative. Each of those "miss" sets is an intersection of open
// half-planes in dual coordinates, hence convex, so the rectangle avoids the
// stabbing region iff all four of its corners miss on the same side. Boundary
// contact (some f_i = 0) counts as interference.
inline bool zone_interferes(const std::array<Vec2, 3>& tri, const DualCell& cell, DualKind kind) {
    bool all_pos = true, all_neg = true;
    const double slopes[2] = {cell.slope_lo, cell.slope_hi};
    const double offsets[2] = {cell.offset_lo, cell.offset_hi};
    for (double s : slopes) {
        for (double o : offsets) {
            for (const Vec2& p : tri) {
                const double f = (kind == DualKind::KQ) ? p.v - s * p.u - o : p.u - s * p.v - o;
                all_pos = all_pos && f > 0.0;
                all_neg = all_neg && f < 0.0;
            }
        }
    }
    return !(all_pos || all_neg);
}

namespace detail {

// Minimum gap between distinct values, or nothing if fewer than two distinct.
inline std::optional<double> min_distinct_gap(std::vector<double> vals) {
    std::sort(vals.begin(), vals.end());
    std::optional<double> gap;
    for (std::size_t i = 1; i < vals.size(); ++i) {
        const double d = vals[i] - vals[i - 1];
        if (d > 0.0 && (!gap || d < *gap)) gap = d;
    }
    return gap;
}

}  // namespace detail

// Grid resolution heuristic: subdivide finely enough that two distinct
// projected vertex offsets (and two distinct edge slopes) never share a
// bucket. Capped because near-coincident values would explode the grid;
// falls back to 16 cells when every value coincides.
inline GridSpec suggest_grid(std::span<const Vec2> pts,
                             std::span<const std::pair<uint32_t, uint32_t>> edges, DualKind kind,
                             double a, uint32_t cap = 1024) {
    constexpr uint32_t kFallback = 16;
    std::vector<double> offsets;
    offsets.reserve(pts.size());
    for (const Vec2& p : pts) offsets.push_back(kind == DualKind::KQ ? p.v : p.u);

    std::vector<double> slopes;
    slopes.reserve(edges.size());
    for (const auto& [i, j] : edges) {
        const double du = pts[j].u - pts[i].u;
        const double dv = pts[j].v - pts[i].v;
        const double s = (kind == DualKind::KQ) ? dv / du : du / dv;
        if (std::isfinite(s) && std::abs(s) <= 1.0) slopes.push_back(s);
    }

    GridSpec spec{kFallback, kFallback};
    if (const auto gap = detail::min_distinct_gap(std::move(offsets))) {
        spec.n_offset = static_cast<uint32_t>(
            std::min<double>(std::ceil(2.0 * a / *gap) + 1.0, cap));
    }
    if (const auto gap = detail::min_distinct_gap(std::move(slopes))) {
        spec.n_slope = static_cast<uint32_t>(std::min<double>(std::ceil(2.0 / *gap) + 1.0, cap));
    }
    return spec;
}

}  // namespace aflclip
