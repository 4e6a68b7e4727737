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

#include <cmath>
#include <limits>
#include <optional>

#include "aflclip/clip_result.hpp"
#include "aflclip/core.hpp"
#include "aflclip/polyhedron.hpp"

namespace aflclip {

// Baseline O(N) clipper: intersects the parametric line with the half-space
// n.x + d <= 0 of every facet, keeping the max entering / min leaving
// parameters. Reference semantics for the preprocessed clipper.
inline ClipResult clip_line_cb(const ConvexPolyhedron& poly, const Line3& line,
                               ClipMode mode = ClipMode::Line) {
    double t_in = -std::numeric_limits<double>::infinity();
    double t_out = std::numeric_limits<double>::infinity();
    std::optional<uint32_t> entry, exit;

    const double dir_len = norm(line.dir);
    const double outside_slack = tol::convexity * poly.bounding_radius;
    for (uint32_t i = 0; i < poly.facet_count(); ++i) {
        const Facet& f = poly.facets[i];
        const double denom = dot(f.n, line.dir);
        const double value = f.n.x * line.anchor.x + f.n.y * line.anchor.y +
                             f.n.z * line.anchor.z + f.d;
        const double n_len = norm(f.n);
        if (std::abs(denom) <= tol::parallel * n_len * dir_len) {
            if (value > outside_slack * n_len) return {};  // parallel and outside
            continue;
        }
        const double t = -value / denom;
        if (denom < 0.0) {  // entering the half-space
            if (t > t_in) {
                t_in = t;
                entry = i;
            }
        } else {  // leaving
            if (t < t_out) {
                t_out = t;
                exit = i;
            }
        }
    }
    if (t_in == -std::numeric_limits<double>::infinity() ||
        t_out == std::numeric_limits<double>::infinity()) {
        return {};  // unbounded in some direction; not a closed polyhedron hit
    }
    return detail::classify_interval(line, t_in, t_out, entry, exit, mode);
}

}  // namespace aflclip
