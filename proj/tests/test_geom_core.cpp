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

#include <catch2/catch_amalgamated.hpp>

#include "aflclip/bench.hpp"
#include "aflclip/polyhedron.hpp"
#include "helpers.hpp"

using namespace aflclip;
using Catch::Approx;

TEST_CASE("cross product basics", "[geom_core]") {
    CHECK(cross({0, 0, 1}, {1, 0, 0}) == Vec3{0, 1, 0});
    CHECK(cross({1, 0, 0}, {1, 0, 0}) == Vec3{0, 0, 0});
    CHECK(cross({1, 2, 3}, {0, 1, 0}) == Vec3{-3, 0, 1});
}

TEST_CASE("cross product is anticommutative and orthogonal", "[geom_core]") {
    detail::Uniform rng(42);
    for (int i = 0; i < 1000; ++i) {
        const Vec3 u{rng.range(-10, 10), rng.range(-10, 10), rng.range(-10, 10)};
        const Vec3 v{rng.range(-10, 10), rng.range(-10, 10), rng.range(-10, 10)};
        const Vec3 c = cross(u, v);
        CHECK(c == -cross(v, u));
        CHECK(std::abs(dot(c, u)) <= 1e-9 * (1.0 + norm(c) * norm(u)));
        CHECK(std::abs(dot(c, v)) <= 1e-9 * (1.0 + norm(c) * norm(v)));
    }
}

TEST_CASE("plane evaluation", "[geom_core]") {
    const Plane z_plane{{0, 0, 1}, 0};
    CHECK(z_plane.eval({1, 2, 5}) == 5.0);
    CHECK(z_plane.eval({3, 4, 0}) == 0.0);
    CHECK(Plane{{1, 1, 0}, -1}.eval({1, 1, 0}) == 1.0);
}

TEST_CASE("line-triangle intersection worked cases", "[geom_core]") {
    const std::vector<Point3> verts{{0, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, 0}, {0.5, 0.5, 0}};

    SECTION("direct hit on the x=0 facet") {
        Facet f{0, 1, 2, cross(Vec3{0, 1, 0}, Vec3{0, 0, 1}), 0.0};
        f.d = -dot(f.n, verts[0]);
        const auto t = line_triangle_intersect({{-1, 0.25, 0.25}, {1, 0, 0}}, f, verts);
        REQUIRE(t.has_value());
        CHECK(*t == Approx(1.0));
    }
    SECTION("hit exactly on the hypotenuse edge is accepted") {
        const std::vector<Point3> tri{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
        Facet f{0, 1, 2, cross(tri[1] - tri[0], tri[2] - tri[0]), 0.0};
        f.d = -dot(f.n, tri[0]);
        const auto t = line_triangle_intersect({{0.5, 0.5, -1}, {0, 0, 1}}, f, tri);
        REQUIRE(t.has_value());
        CHECK(*t == Approx(1.0));
    }
    SECTION("line parallel to the facet plane reports no hit") {
        Facet f{0, 1, 2, {1, 0, 0}, 0.0};  // x = 0 plane
        const auto t = line_triangle_intersect({{-1, 0.2, 0.2}, {0, 1, 1}}, f, verts);
        CHECK_FALSE(t.has_value());
    }
}

TEST_CASE("line-triangle intersection matches an independent solver", "[geom_core]") {
    detail::Uniform rng(7);
    int hits = 0;
    for (int i = 0; i < 10000; ++i) {
        std::vector<Point3> verts;
        for (int k = 0; k < 3; ++k) {
            verts.push_back({rng.range(-1, 1), rng.range(-1, 1), rng.range(-1, 1)});
        }
        Facet f{0, 1, 2, cross(verts[1] - verts[0], verts[2] - verts[0]), 0.0};
        f.d = -dot(f.n, verts[0]);
        if (norm(f.n) < 1e-9) continue;
        Line3 line{{rng.range(-2, 2), rng.range(-2, 2), rng.range(-2, 2)},
                   {rng.range(-1, 1), rng.range(-1, 1), rng.range(-1, 1)}};
        if (norm(line.dir) < 1e-6) continue;
        if (i % 2 == 0) {
            // Aim through a random interior point so the hit path is exercised.
            double b1 = rng.range(0, 1), b2 = rng.range(0, 1);
            if (b1 + b2 > 1.0) {
                b1 = 1.0 - b1;
                b2 = 1.0 - b2;
            }
            const Point3 target = verts[0] + (verts[1] - verts[0]) * b1 +
                                  (verts[2] - verts[0]) * b2;
            line.dir = target - line.anchor;
            if (norm(line.dir) < 1e-6) continue;
        }

        const auto got = line_triangle_intersect(line, f, verts);
        const auto want = testutil::moller_trumbore(line, verts[0], verts[1], verts[2]);
        // Identical verdicts away from the tolerance boundary; compare t when both hit.
        if (got && want) {
            ++hits;
            CHECK(std::abs(*got - *want) <= 1e-9 * (1.0 + std::abs(*want)));
        } else if (got.has_value() != want.has_value()) {
            // Allowed only for boundary grazing: the hit point must be within
            // a hair of the triangle boundary.
            const double t = got ? *got : *want;
            const Point3 p = line.at(t);
            const Vec3 e1 = verts[1] - verts[0], e2 = verts[2] - verts[0];
            const Vec3 w = p - verts[0];
            const double d11 = dot(e1, e1), d12 = dot(e1, e2), d22 = dot(e2, e2);
            const double det = d11 * d22 - d12 * d12;
            const double beta = (d22 * dot(w, e1) - d12 * dot(w, e2)) / det;
            const double gamma = (d11 * dot(w, e2) - d12 * dot(w, e1)) / det;
            const double margin = std::min({beta, gamma, 1.0 - beta - gamma});
            CHECK(std::abs(margin) <= 1e-6);
        }
    }
    CHECK(hits > 500);  // the sample actually exercises the hit path
}

TEST_CASE("validate_convex accepts and repairs a tetrahedron", "[geom_core]") {
    const auto poly = testutil::make_tetrahedron();
    CHECK(poly.facet_count() == 4);

    // One facet wound inward: validation flips it, same outward planes.
    const auto repaired = validate_convex({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
                                          {{0, 2, 1}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
    CHECK(repaired.facet_count() == 4);
    for (const Facet& f : repaired.facets) {
        CHECK(Plane{f.n, f.d}.eval(repaired.centroid) < 0.0);
    }
}

TEST_CASE("validate_convex rejects bad input", "[geom_core]") {
    SECTION("dented base: fifth vertex inside the hull of the facets") {
        // Subdividing the tetra base around a vertex displaced into the solid
        // leaves other vertices strictly outside the new facet planes.
        CHECK_THROWS_AS(
            validate_convex({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0.2, 0.2, 1}, {0.3, 0.3, 0.5}},
                            {{0, 1, 3}, {1, 2, 3}, {2, 0, 3}, {0, 1, 4}, {1, 2, 4}, {2, 0, 4}}),
            NonConvexError);
    }
    SECTION("missing facet leaves an open edge") {
        CHECK_THROWS_AS(validate_convex({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
                                        {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {0, 2, 3}}),
                        OpenSurfaceError);
    }
    SECTION("degenerate facet") {
        CHECK_THROWS_AS(validate_convex({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {0, 0, 1}},
                                        {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}),
                        DegenerateFacetError);
    }
    SECTION("too few elements") {
        CHECK_THROWS_AS(validate_convex({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{0, 1, 2}}),
                        std::invalid_argument);
    }
}

TEST_CASE("validated facet planes keep the centroid inside", "[geom_core]") {
    for (uint64_t seed : {1u, 2u, 3u}) {
        const auto poly = random_convex_polyhedron(40, seed);
        for (const Facet& f : poly.facets) {
            CHECK(Plane{f.n, f.d}.eval(poly.centroid) < 0.0);
        }
    }
}
