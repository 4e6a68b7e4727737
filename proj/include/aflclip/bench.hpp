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
#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "aflclip/afl.hpp"
#include "aflclip/clipper.hpp"
#include "aflclip/cyrus_beck.hpp"
#include "aflclip/polyhedron.hpp"

namespace aflclip {

// ---------------------------------------------------------------------------
// Abstract cost model
// ---------------------------------------------------------------------------

// Per-operation-class weights for (assign, compare, add/sub, multiply,
// divide), a per-facet op-count tuple for the baseline clipper and a fixed
// op-count tuple for the preprocessed query. The historical reference
// weights imply a per-facet baseline cost of 678 by the dot product, yet the
// published constant is 777; both presets are kept because neither
// reproduces the other.
struct CostModel {
    std::array<double, 5> timings{};
    std::array<double, 5> cb_tuple{};
    std::array<double, 5> o1_tuple{};
    double cb_facet_constant = 0.0;  // per-facet baseline cost used in ratios

    static CostModel paper() {
        return {{33, 50, 16, 20, 114}, {6, 3, 6, 6, 1}, {18, 3, 8, 8, 4}, 777.0};
    }
    static CostModel paper_derived() {
        CostModel m = paper();
        m.cb_facet_constant = cb_tuple_cost(m);
        return m;
    }

    static double cb_tuple_cost(const CostModel& m) {
        return std::inner_product(m.cb_tuple.begin(), m.cb_tuple.end(), m.timings.begin(), 0.0);
    }
};

// Baseline cost for N facets from the tuple dot product.
inline double cost_cb(const CostModel& m, double n_facets) {
    return CostModel::cb_tuple_cost(m) * n_facets;
}

// Preprocessed-query cost: fixed overhead plus a two-facet narrow phase
// priced at the model's per-facet constant.
inline double cost_o1(const CostModel& m) {
    const double fixed =
        std::inner_product(m.o1_tuple.begin(), m.o1_tuple.end(), m.timings.begin(), 0.0);
    return fixed + 2.0 * m.cb_facet_constant;
}

// Predicted speedup of the preprocessed query over the baseline, using the
// model's per-facet constant on both sides.
inline double efficiency_ratio(const CostModel& m, double n_facets) {
    return m.cb_facet_constant * n_facets / cost_o1(m);
}

// ---------------------------------------------------------------------------
// Random convex polyhedra
// ---------------------------------------------------------------------------

namespace detail {

// Deterministic uniform doubles independent of the standard library's
// distribution implementations.
struct Uniform {
    std::mt19937_64 gen;
    explicit Uniform(uint64_t seed) : gen(seed) {}
    double next() {  // [0, 1)
        return static_cast<double>(gen() >> 11) * 0x1.0p-53;
    }
    double range(double lo, double hi) { return lo + (hi - lo) * next(); }
};

inline Point3 sphere_point(Uniform& rng, const Point3& center, double radius) {
    const double z = rng.range(-1.0, 1.0);
    const double phi = rng.range(0.0, 2.0 * 3.14159265358979323846);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return center + Vec3{r * std::cos(phi), r * std::sin(phi), z} * radius;
}

struct HullFace {
    uint32_t a, b, c;
    Vec3 n;
    double d;
    double eval(const Point3& p) const { return dot(n, p) + d; }
};

// Incremental convex hull of points in general position. Faces visible from
// each new point are replaced by a fan over the horizon edges.
inline std::vector<std::array<uint32_t, 3>> convex_hull(const std::vector<Point3>& pts) {
    constexpr double eps = 1e-12;
    const auto n = static_cast<uint32_t>(pts.size());

    // Seed tetrahedron: spread-out quadruple with non-zero volume.
    uint32_t i1 = 1;
    for (uint32_t i = 1; i < n; ++i) {
        if (norm2(pts[i] - pts[0]) > norm2(pts[i1] - pts[0])) i1 = i;
    }
    uint32_t i2 = 0;
    double best = -1.0;
    for (uint32_t i = 1; i < n; ++i) {
        const double area = norm2(cross(pts[i1] - pts[0], pts[i] - pts[0]));
        if (area > best) {
            best = area;
            i2 = i;
        }
    }
    const Vec3 seed_n = cross(pts[i1] - pts[0], pts[i2] - pts[0]);
    uint32_t i3 = 0;
    best = -1.0;
    for (uint32_t i = 1; i < n; ++i) {
        const double vol = std::abs(dot(seed_n, pts[i] - pts[0]));
        if (vol > best) {
            best = vol;
            i3 = i;
        }
    }
    if (best <= eps) throw DegenerateHullError("seed points are nearly coplanar");

    const auto make_face = [&](uint32_t a, uint32_t b, uint32_t c, const Point3& inside) {
        HullFace f{a, b, c, cross(pts[b] - pts[a], pts[c] - pts[a]), 0.0};
        f.d = -dot(f.n, pts[a]);
        if (f.eval(inside) > 0.0) {
            std::swap(f.b, f.c);
            f.n = -f.n;
            f.d = -dot(f.n, pts[f.a]);
        }
        return f;
    };

    const Point3 inner =
        (pts[0] + pts[i1] + pts[i2] + pts[i3]) / 4.0;
    std::vector<HullFace> faces{make_face(0, i1, i2, inner), make_face(0, i1, i3, inner),
                                make_face(0, i2, i3, inner), make_face(i1, i2, i3, inner)};

    for (uint32_t p = 1; p < n; ++p) {
        if (p == i1 || p == i2 || p == i3) continue;
        std::vector<char> visible(faces.size(), 0);
        bool any = false;
        for (std::size_t f = 0; f < faces.size(); ++f) {
            if (faces[f].eval(pts[p]) > eps * norm(faces[f].n)) {
                visible[f] = 1;
                any = true;
            }
        }
        if (!any) continue;  // interior point

        // Horizon: directed edges of visible faces whose twin is invisible.
        std::map<std::pair<uint32_t, uint32_t>, int> edge_count;
        for (std::size_t f = 0; f < faces.size(); ++f) {
            if (!visible[f]) continue;
            const uint32_t idx[3] = {faces[f].a, faces[f].b, faces[f].c};
            for (int k = 0; k < 3; ++k) {
                const uint32_t u = idx[k], v = idx[(k + 1) % 3];
                ++edge_count[{std::min(u, v), std::max(u, v)}];
            }
        }
        std::vector<std::pair<uint32_t, uint32_t>> horizon;
        for (std::size_t f = 0; f < faces.size(); ++f) {
            if (!visible[f]) continue;
            const uint32_t idx[3] = {faces[f].a, faces[f].b, faces[f].c};
            for (int k = 0; k < 3; ++k) {
                const uint32_t u = idx[k], v = idx[(k + 1) % 3];
                if (edge_count[{std::min(u, v), std::max(u, v)}] == 1) horizon.emplace_back(u, v);
            }
        }

        std::vector<HullFace> next;
        next.reserve(faces.size());
        for (std::size_t f = 0; f < faces.size(); ++f) {
            if (!visible[f]) next.push_back(faces[f]);
        }
        for (const auto& [u, v] : horizon) next.push_back(make_face(u, v, p, inner));
        faces = std::move(next);
    }

    std::vector<std::array<uint32_t, 3>> out;
    out.reserve(faces.size());
    for (const HullFace& f : faces) out.push_back({f.a, f.b, f.c});
    return out;
}

}  // namespace detail

// Generates the convex hull of pseudo-random points on the unit sphere.
// Deterministic in the seed; facet count is 2*n_points - 4 when all points
// land on the hull in general position. Retries with fresh points before
// giving up on a degenerate sample.
inline ConvexPolyhedron random_convex_polyhedron(uint32_t n_points, uint64_t seed) {
    if (n_points < 4) throw std::invalid_argument("need at least 4 points");
    for (int attempt = 0; attempt < 3; ++attempt) {
        detail::Uniform rng(seed + 0x9E3779B97F4A7C15ull * static_cast<uint64_t>(attempt));
        std::vector<Point3> pts;
        pts.reserve(n_points);
        for (uint32_t i = 0; i < n_points; ++i) {
            pts.push_back(detail::sphere_point(rng, {0, 0, 0}, 1.0));
        }
        try {
            auto faces = detail::convex_hull(pts);
            return validate_convex(std::move(pts), faces);
        } catch (const DegenerateHullError&) {
        } catch (const DegenerateFacetError&) {
        }
    }
    throw DegenerateHullError("hull construction failed after 3 attempts");
}

// Random chord generator: lines through point pairs on a sphere of twice the
// bounding radius, so most of them hit the polyhedron.
inline Line3 random_chord_line(detail::Uniform& rng, const ConvexPolyhedron& poly) {
    const double r = 2.0 * poly.bounding_radius;
    const Point3 p1 = detail::sphere_point(rng, poly.centroid, r);
    const Point3 p2 = detail::sphere_point(rng, poly.centroid, r);
    return {p1, p2 - p1};
}

// ---------------------------------------------------------------------------
// Benchmark harness
// ---------------------------------------------------------------------------

struct BenchConfig {
    std::vector<uint32_t> facet_counts{4, 128, 1024};
    std::vector<GridSpec> grids{{8, 8}, {32, 32}, {128, 128}};
    uint32_t lines = 1000;
    uint64_t seed = 1;
    unsigned threads = 1;      // preprocessing workers
    uint32_t timing_runs = 5;  // median-of-n batch timings
};

struct BenchRow {
    uint32_t n_facets = 0;
    GridSpec grid;
    double omega_mean = 0.0;
    double omega_median = 0.0;
    double omega_max = 0.0;
    double omega1_mean = 0.0;
    double preprocess_ms = 0.0;
    double query_o1_ns = 0.0;
    double query_cb_ns = 0.0;
    uint64_t seed = 0;
};

namespace detail {

inline volatile double timing_sink = 0.0;

template <typename F>
inline double median_batch_ns(F&& batch, uint32_t runs, uint32_t per_batch) {
    std::vector<double> ns(runs);
    for (uint32_t r = 0; r < runs; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        batch();
        const auto t1 = std::chrono::steady_clock::now();
        ns[r] = std::chrono::duration<double, std::nano>(t1 - t0).count() / per_batch;
    }
    std::sort(ns.begin(), ns.end());
    return ns[ns.size() / 2];
}

inline double mean(const std::vector<double>& xs) {
    if (xs.empty()) return 0.0;
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

inline double median(std::vector<double> xs) {
    if (xs.empty()) return 0.0;
    std::sort(xs.begin(), xs.end());
    const std::size_t m = xs.size() / 2;
    return xs.size() % 2 ? xs[m] : 0.5 * (xs[m - 1] + xs[m]);
}

}  // namespace detail

// Builds, preprocesses and queries each (facet count, grid) case with both
// clippers. Candidate-set statistics are deterministic in the seed; only the
// wall-clock columns vary between runs.
inline std::vector<BenchRow> run_bench(const BenchConfig& cfg) {
    std::vector<BenchRow> rows;
    for (uint32_t n_facets : cfg.facet_counts) {
        const uint32_t n_points = std::max<uint32_t>(4, (n_facets + 4) / 2);
        const ConvexPolyhedron poly = random_convex_polyhedron(n_points, cfg.seed);

        detail::Uniform rng(cfg.seed ^ 0xA5A5A5A5A5A5A5A5ull);
        std::vector<Line3> lines;
        lines.reserve(cfg.lines);
        for (uint32_t i = 0; i < cfg.lines; ++i) lines.push_back(random_chord_line(rng, poly));

        for (const GridSpec& grid : cfg.grids) {
            BenchRow row;
            row.n_facets = poly.facet_count();
            row.grid = grid;
            row.seed = cfg.seed;

            const auto p0 = std::chrono::steady_clock::now();
            const PreprocessedPolyhedron prep =
                preprocess(poly, {.grid = grid, .threads = cfg.threads});
            const auto p1 = std::chrono::steady_clock::now();
            row.preprocess_ms = std::chrono::duration<double, std::milli>(p1 - p0).count();

            std::vector<double> omegas, omega1s;
            omegas.reserve(lines.size());
            omega1s.reserve(lines.size());
            for (const Line3& line : lines) {
                QueryStats st;
                clip_line(prep, line, ClipMode::Line, &st);
                omegas.push_back(st.omega);
                omega1s.push_back(st.omega1);
            }
            row.omega_mean = detail::mean(omegas);
            row.omega_median = detail::median(omegas);
            row.omega_max = omegas.empty() ? 0.0 : *std::max_element(omegas.begin(), omegas.end());
            row.omega1_mean = detail::mean(omega1s);

            row.query_o1_ns = detail::median_batch_ns(
                [&] {
                    double acc = 0.0;
                    for (const Line3& line : lines) acc += clip_line(prep, line).t_in;
                    detail::timing_sink = acc;
                },
                cfg.timing_runs, cfg.lines);
            row.query_cb_ns = detail::median_batch_ns(
                [&] {
                    double acc = 0.0;
                    for (const Line3& line : lines) acc += clip_line_cb(poly, line).t_in;
                    detail::timing_sink = acc;
                },
                cfg.timing_runs, cfg.lines);
            rows.push_back(row);
        }
    }
    return rows;
}

inline void write_csv(const std::vector<BenchRow>& rows, std::ostream& out) {
    out << "n_facets,grid_slope,grid_offset,omega_mean,omega_median,omega_max,omega1_mean,"
           "preprocess_ms,query_o1_ns,query_cb_ns,seed\n";
    for (const BenchRow& r : rows) {
        out << r.n_facets << ',' << r.grid.n_slope << ',' << r.grid.n_offset << ','
            << r.omega_mean << ',' << r.omega_median << ',' << r.omega_max << ','
            << r.omega1_mean << ',' << r.preprocess_ms << ',' << r.query_o1_ns << ','
            << r.query_cb_ns << ',' << r.seed << '\n';
    }
}

namespace detail {

struct SvgSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;  // (x, y)
};

// One line chart; x and y are scaled to the data range.
inline void svg_chart(std::ostream& out, double top, const std::string& title,
                      const std::vector<SvgSeries>& series) {
    constexpr double w = 720, h = 240, ml = 70, mr = 160, mt = 30, mb = 34;
    double xlo = 1e300, xhi = -1e300, ylo = 0.0, yhi = -1e300;
    for (const auto& s : series) {
        for (const auto& [x, y] : s.points) {
            xlo = std::min(xlo, x);
            xhi = std::max(xhi, x);
            yhi = std::max(yhi, y);
        }
    }
    if (xhi <= xlo) xhi = xlo + 1.0;
    if (yhi <= ylo) yhi = ylo + 1.0;
    const auto X = [&](double x) { return ml + (x - xlo) / (xhi - xlo) * (w - ml - mr); };
    const auto Y = [&](double y) { return top + h - mb - (y - ylo) / (yhi - ylo) * (h - mt - mb); };

    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
    out << "<g font-family='sans-serif' font-size='12'>\n";
    out << "<text x='" << ml << "' y='" << top + 18 << "' font-size='14'>" << title
        << "</text>\n";
    out << "<line x1='" << ml << "' y1='" << Y(0) << "' x2='" << w - mr << "' y2='" << Y(0)
        << "' stroke='black'/>\n";
    out << "<line x1='" << ml << "' y1='" << Y(0) << "' x2='" << ml << "' y2='" << top + mt
        << "' stroke='black'/>\n";
    out << "<text x='" << ml - 8 << "' y='" << Y(yhi) + 4 << "' text-anchor='end'>" << yhi
        << "</text>\n";
    out << "<text x='" << ml - 8 << "' y='" << Y(0) << "' text-anchor='end'>0</text>\n";
    out << "<text x='" << X(xlo) << "' y='" << Y(0) + 16 << "' text-anchor='middle'>" << xlo
        << "</text>\n";
    out << "<text x='" << X(xhi) << "' y='" << Y(0) + 16 << "' text-anchor='middle'>" << xhi
        << "</text>\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* color = colors[i % 4];
        out << "<polyline fill='none' stroke='" << color << "' stroke-width='1.5' points='";
        for (const auto& [x, y] : series[i].points) out << X(x) << ',' << Y(y) << ' ';
        out << "'/>\n";
        out << "<text x='" << w - mr + 10 << "' y='" << top + mt + 16.0 * (i + 1) << "' fill='"
            << color << "'>" << series[i].label << "</text>\n";
    }
    out << "</g>\n";
}

}  // namespace detail

// Three stacked charts: query time against facet count, total time against
// grid resolution, and candidate-set occupancy against grid resolution.
inline void write_svg(const std::vector<BenchRow>& rows, std::ostream& out) {
    std::map<std::pair<uint32_t, uint32_t>, detail::SvgSeries> by_grid_o1, by_grid_cb;
    std::map<uint32_t, detail::SvgSeries> total_by_n, omega1_by_n, omega_by_n;
    for (const BenchRow& r : rows) {
        const auto gkey = std::make_pair(r.grid.n_slope, r.grid.n_offset);
        const std::string gname =
            std::to_string(r.grid.n_slope) + "x" + std::to_string(r.grid.n_offset);
        const double cells = static_cast<double>(r.grid.n_slope) * r.grid.n_offset;
        by_grid_o1[gkey].label = "O(1) " + gname;
        by_grid_o1[gkey].points.emplace_back(r.n_facets, r.query_o1_ns);
        by_grid_cb[gkey].label = "CB " + gname;
        by_grid_cb[gkey].points.emplace_back(r.n_facets, r.query_cb_ns);
        const std::string nname = "N=" + std::to_string(r.n_facets);
        total_by_n[r.n_facets].label = nname;
        total_by_n[r.n_facets].points.emplace_back(cells, r.preprocess_ms);
        omega1_by_n[r.n_facets].label = nname + " omega1";
        omega1_by_n[r.n_facets].points.emplace_back(cells, r.omega1_mean);
        omega_by_n[r.n_facets].label = nname + " omega";
        omega_by_n[r.n_facets].points.emplace_back(cells, r.omega_mean);
    }
    const auto flatten = [](auto& m) {
        std::vector<detail::SvgSeries> v;
        for (auto& [k, s] : m) {
            std::sort(s.points.begin(), s.points.end());
            v.push_back(std::move(s));
        }
        return v;
    };
    auto chart1 = flatten(by_grid_o1);
    for (auto& s : flatten(by_grid_cb)) chart1.push_back(std::move(s));
    auto chart3 = flatten(omega1_by_n);
    for (auto& s : flatten(omega_by_n)) chart3.push_back(std::move(s));

    out << "<svg xmlns='http://www.w3.org/2000/svg' width='720' height='760'>\n";
    detail::svg_chart(out, 0, "per-query time (ns) vs facet count", chart1);
    detail::svg_chart(out, 250, "preprocess time (ms) vs grid cells", flatten(total_by_n));
    detail::svg_chart(out, 500, "mean candidates vs grid cells", chart3);
    out << "</svg>\n";
}

}  // namespace aflclip
