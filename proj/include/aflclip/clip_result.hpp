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
#include <cstdint>
#include <optional>

#include "aflclip/core.hpp"

namespace aflclip {

enum class ClipKind { Empty, Point, Segment };

// Clip against the infinite line or only its [0,1] parameter segment.
enum class ClipMode { Line, Segment };

// The part of a line inside the polyhedron, as a parameter interval plus the
// corresponding world-space points. Facet ids are absent when the interval
// end was produced by the [0,1] segment clamp rather than a facet.
struct ClipResult {
    ClipKind kind = ClipKind::Empty;
    double t_in = 0.0;
    double t_out = 0.0;
    std::optional<uint32_t> entry_facet;
    std::optional<uint32_t> exit_facet;
    Point3 entry_point;
    Point3 exit_point;
};

namespace detail {

// Shared interval -> result classification. A span shorter than the collapse
// tolerance reports a single tangent Point.
inline ClipResult classify_interval(const Line3& line, double t_in, double t_out,
                                    std::optional<uint32_t> entry, std::optional<uint32_t> exit,
                                    ClipMode mode) {
    ClipResult r;
    if (mode == ClipMode::Segment) {
        if (t_in < 0.0) {
            t_in = 0.0;
            entry.reset();
        }
        if (t_out > 1.0) {
            t_out = 1.0;
            exit.reset();
        }
    }
    const double eps = tol::point_collapse * (1.0 + std::abs(t_in));
    if (t_in > t_out + eps) return r;  // Empty
    if (t_out - t_in <= eps) {
        const double t = 0.5 * (t_in + t_out);
        r.kind = ClipKind::Point;
        r.t_in = r.t_out = t;
    } else {
        r.kind = ClipKind::Segment;
        r.t_in = t_in;
        r.t_out = t_out;
    }
    r.entry_facet = entry;
    r.exit_facet = exit;
    r.entry_point = line.at(r.t_in);
    r.exit_point = line.at(r.t_out);
    return r;
}

}  // namespace detail
}  // namespace aflclip
