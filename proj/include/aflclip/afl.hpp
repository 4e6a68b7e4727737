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
#include <bit>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <thread>
#include <utility>
#include <vector>

#include "aflclip/core.hpp"
#include "aflclip/errors.hpp"
#include "aflclip/polyhedron.hpp"
#include "aflclip/semidual.hpp"

namespace aflclip {

// Fixed-width facet set packed into 64-bit words; set intersection is a
// word-wise AND. Bits at or above size() stay zero.
class FacetBitset {
public:
    FacetBitset() = default;
    explicit FacetBitset(uint32_t n_bits)
        : n_bits_(n_bits), words_((n_bits + 63) / 64, 0u) {}

    uint32_t size() const { return n_bits_; }
    std::span<const uint64_t> words() const { return words_; }
    std::span<uint64_t> words() { return words_; }

    void set(uint32_t i) { words_[i >> 6] |= uint64_t{1} << (i & 63); }
    bool test(uint32_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

    uint32_t count() const {
        uint32_t c = 0;
        for (uint64_t w : words_) c += static_cast<uint32_t>(std::popcount(w));
        return c;
    }

    FacetBitset& operator&=(const FacetBitset& o) {
        if (o.n_bits_ != n_bits_) throw BitsetLengthError("bitset sizes differ");
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }

    // Visits set bits in ascending order.
    template <typename F>
    void for_each_set(F&& fn) const {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            uint64_t w = words_[wi];
            while (w != 0) {
                const int b = std::countr_zero(w);
                fn(static_cast<uint32_t>(wi * 64 + b));
                w &= w - 1;
            }
        }
    }

    std::vector<uint32_t> set_bits() const {
        std::vector<uint32_t> out;
        out.reserve(count());
        for_each_set([&](uint32_t i) { out.push_back(i); });
        return out;
    }

    bool operator==(const FacetBitset&) const = default;

private:
    uint32_t n_bits_ = 0;
    std::vector<uint64_t> words_;
};

inline FacetBitset intersect(FacetBitset a, const FacetBitset& b) {
    a &= b;
    return a;
}

// One precomputed grid over a dual rectangle: each cell stores the set of
// facets whose projection is stabbed by at least one line of the cell's zone.
struct SemidualGrid {
    DualKind kind = DualKind::KQ;
    Axis proj_axis = Axis::X;
    BoundingFrame frame;
    GridSpec spec;
    std::vector<FacetBitset> cells;  // row-major: ii (offset) outer, jj (slope) inner

    const FacetBitset& cell(uint32_t ii, uint32_t jj) const {
        return cells[static_cast<std::size_t>(ii) * spec.n_slope + jj];
    }
    FacetBitset& cell(uint32_t ii, uint32_t jj) {
        return cells[static_cast<std::size_t>(ii) * spec.n_slope + jj];
    }

    DualCell cell_rect(uint32_t ii, uint32_t jj) const {
        const double a2 = 2.0 * frame.a;
        return {-1.0 + 2.0 * jj / spec.n_slope,
                -1.0 + 2.0 * (jj + 1) / spec.n_slope,
                -a2 + 2.0 * a2 * ii / spec.n_offset,
                -a2 + 2.0 * a2 * (ii + 1) / spec.n_offset};
    }

    bool operator==(const SemidualGrid&) const = default;
};

// All six grids: for each projection axis, one grid per dual form.
struct PreprocessedPolyhedron {
    ConvexPolyhedron poly;
    std::array<SemidualGrid, 6> grids;

    const SemidualGrid& grid(Axis axis, DualKind kind) const {
        return grids[static_cast<std::size_t>(axis) * 2 + static_cast<std::size_t>(kind)];
    }
    SemidualGrid& grid(Axis axis, DualKind kind) {
        return grids[static_cast<std::size_t>(axis) * 2 + static_cast<std::size_t>(kind)];
    }
};

struct PreprocessConfig {
    std::optional<GridSpec> grid;  // fixed resolution for all six grids
    uint32_t cap = 1024;           // auto-sizing cap per dimension
    unsigned threads = 1;          // grid construction workers (cells are independent)
};

// Builds one grid: projects every facet, then marks each (cell, facet) pair
// whose zone interferes with the projected triangle. Cells are filled
// independently, so rows can be split across threads.
inline SemidualGrid build_grid(const ConvexPolyhedron& poly, Axis proj_axis, DualKind kind,
                               const GridSpec& spec, unsigned threads = 1) {
    std::vector<Vec2> pts;
    pts.reserve(poly.vertices.size());
    for (const Point3& v : poly.vertices) pts.push_back(project(v, proj_axis));

    SemidualGrid g;
    g.kind = kind;
    g.proj_axis = proj_axis;
    g.frame = bounding_frame(pts);
    g.spec = spec;
    g.cells.assign(static_cast<std::size_t>(spec.n_offset) * spec.n_slope,
                   FacetBitset(poly.facet_count()));

    // Frame-centered projected triangles, one per facet.
    std::vector<std::array<Vec2, 3>> tris(poly.facet_count());
    for (uint32_t k = 0; k < poly.facet_count(); ++k) {
        const Facet& f = poly.facets[k];
        const uint32_t idx[3] = {f.v0, f.v1, f.v2};
        for (int c = 0; c < 3; ++c) {
            tris[k][c] = {pts[idx[c]].u - g.frame.center.u, pts[idx[c]].v - g.frame.center.v};
        }
    }

    const auto fill_rows = [&](uint32_t ii_begin, uint32_t ii_end) {
        for (uint32_t ii = ii_begin; ii < ii_end; ++ii) {
            for (uint32_t jj = 0; jj < spec.n_slope; ++jj) {
                const DualCell rect = g.cell_rect(ii, jj);
                FacetBitset& bits = g.cell(ii, jj);
                for (uint32_t k = 0; k < poly.facet_count(); ++k) {
                    if (zone_interferes(tris[k], rect, kind)) bits.set(k);
                }
            }
        }
    };

    if (threads <= 1 || spec.n_offset < 2) {
        fill_rows(0, spec.n_offset);
    } else {
        const unsigned n = std::min<unsigned>(threads, spec.n_offset);
        std::vector<std::thread> workers;
        workers.reserve(n);
        for (unsigned w = 0; w < n; ++w) {
            const uint32_t lo = spec.n_offset * w / n;
            const uint32_t hi = spec.n_offset * (w + 1) / n;
            workers.emplace_back(fill_rows, lo, hi);
        }
        for (auto& t : workers) t.join();
    }
    return g;
}

namespace detail {

inline std::vector<std::pair<uint32_t, uint32_t>> unique_edges(const ConvexPolyhedron& poly) {
    std::set<std::pair<uint32_t, uint32_t>> edges;
    for (const Facet& f : poly.facets) {
        const uint32_t idx[3] = {f.v0, f.v1, f.v2};
        for (int k = 0; k < 3; ++k) {
            const uint32_t a = idx[k], b = idx[(k + 1) % 3];
            edges.emplace(std::min(a, b), std::max(a, b));
        }
    }
    return {edges.begin(), edges.end()};
}

}  // namespace detail

// Builds all six grids. Resolution comes from the config override when given,
// otherwise from suggest_grid per projection and form.
inline PreprocessedPolyhedron preprocess(const ConvexPolyhedron& poly,
                                         const PreprocessConfig& cfg = {}) {
    PreprocessedPolyhedron prep;
    prep.poly = poly;
    const auto edges = detail::unique_edges(poly);
    for (Axis axis : {Axis::X, Axis::Y, Axis::Z}) {
        std::vector<Vec2> pts;
        pts.reserve(poly.vertices.size());
        for (const Point3& v : poly.vertices) pts.push_back(project(v, axis));
        for (DualKind kind : {DualKind::KQ, DualKind::MP}) {
            GridSpec spec;
            if (cfg.grid) {
                spec = *cfg.grid;
            } else {
                const BoundingFrame frame = bounding_frame(pts);
                spec = suggest_grid(pts, edges, kind, frame.a, cfg.cap);
            }
            prep.grid(axis, kind) = build_grid(poly, axis, kind, spec, cfg.threads);
        }
    }
    return prep;
}

}  // namespace aflclip
