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
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "aflclip/core.hpp"
#include "aflclip/errors.hpp"

namespace aflclip {

// Triangular facet with outward plane n.x + d = 0. Normals are recomputed
// during validation, never trusted from input winding.
struct Facet {
    uint32_t v0 = 0, v1 = 0, v2 = 0;
    Vec3 n;
    double d = 0.0;
    bool operator==(const Facet&) const = default;
};

struct ConvexPolyhedron {
    std::vector<Point3> vertices;
    std::vector<Facet> facets;
    Point3 centroid;              // interior reference point
    double bounding_radius = 0.0; // max vertex distance from centroid

    uint32_t facet_count() const { return static_cast<uint32_t>(facets.size()); }
};

// Intersection of a line with one facet triangle. Returns the line parameter
// of the hit, or nothing when the line is parallel to the facet plane or the
// plane hit falls outside the triangle. Containment is epsilon-inflated so
// grazing hits on edges and vertices are reported rather than dropped.
inline std::optional<double> line_triangle_intersect(const Line3& line, const Facet& facet,
                                                     std::span<const Point3> vertices) {
    const Vec3& n = facet.n;
    const double denom = dot(n, line.dir);
    if (std::abs(denom) <= tol::parallel * norm(n) * norm(line.dir)) return std::nullopt;

    const double t = -(dot(n, line.anchor) + facet.d) / denom;
    const Point3 p = line.at(t);

    const Point3& a = vertices[facet.v0];
    const Vec3 e1 = vertices[facet.v1] - a;
    const Vec3 e2 = vertices[facet.v2] - a;
    const Vec3 w = p - a;
    const double d11 = dot(e1, e1);
    const double d12 = dot(e1, e2);
    const double d22 = dot(e2, e2);
    const double w1 = dot(w, e1);
    const double w2 = dot(w, e2);
    const double det = d11 * d22 - d12 * d12;
    if (det <= 0.0) return std::nullopt;

    const double beta = (d22 * w1 - d12 * w2) / det;
    const double gamma = (d11 * w2 - d12 * w1) / det;
    if (beta < -tol::barycentric || gamma < -tol::barycentric ||
        beta + gamma > 1.0 + tol::barycentric) {
        return std::nullopt;
    }
    return t;
}

// Builds a validated polyhedron from raw vertices and triangle index triples.
// Facets are re-oriented outward, degenerate triangles and non-convex or open
// inputs are rejected.
inline ConvexPolyhedron validate_convex(std::vector<Point3> vertices,
                                        const std::vector<std::array<uint32_t, 3>>& faces) {
    if (vertices.size() < 4 || faces.size() < 4) {
        throw std::invalid_argument("polyhedron needs at least 4 vertices and 4 facets");
    }
    const auto nv = static_cast<uint32_t>(vertices.size());
    for (const auto& f : faces) {
        if (f[0] >= nv || f[1] >= nv || f[2] >= nv) {
            throw std::invalid_argument("facet vertex index out of range");
        }
    }

    ConvexPolyhedron poly;
    poly.centroid = {};
    for (const auto& v : vertices) poly.centroid = poly.centroid + v;
    poly.centroid = poly.centroid / static_cast<double>(vertices.size());
    for (const auto& v : vertices) {
        poly.bounding_radius = std::max(poly.bounding_radius, norm(v - poly.centroid));
    }
    poly.vertices = std::move(vertices);

    poly.facets.reserve(faces.size());
    for (std::size_t i = 0; i < faces.size(); ++i) {
        Facet f{faces[i][0], faces[i][1], faces[i][2], {}, 0.0};
        if (f.v0 == f.v1 || f.v1 == f.v2 || f.v0 == f.v2) {
            throw DegenerateFacetError("facet " + std::to_string(i) + " repeats a vertex");
        }
        const Point3& a = poly.vertices[f.v0];
        const Vec3 e1 = poly.vertices[f.v1] - a;
        const Vec3 e2 = poly.vertices[f.v2] - a;
        const Vec3 e3 = poly.vertices[f.v2] - poly.vertices[f.v1];
        f.n = cross(e1, e2);
        const double longest_sq = std::max({norm2(e1), norm2(e2), norm2(e3)});
        if (norm(f.n) <= 2.0 * tol::degenerate_area * longest_sq) {
            throw DegenerateFacetError("facet " + std::to_string(i) + " has near-zero area");
        }
        if (dot(f.n, poly.centroid - a) > 0.0) {  // flip inward-wound facets
            std::swap(f.v1, f.v2);
            f.n = -f.n;
        }
        f.d = -dot(f.n, a);
        poly.facets.push_back(f);
    }

    // Every vertex must lie on or inside every facet plane.
    const double slack = tol::convexity * poly.bounding_radius;
    for (std::size_t i = 0; i < poly.facets.size(); ++i) {
        const Facet& f = poly.facets[i];
        const double limit = slack * norm(f.n);
        for (const auto& v : poly.vertices) {
            if (f.n.x * v.x + f.n.y * v.y + f.n.z * v.z + f.d > limit) {
                throw NonConvexError("vertex outside facet " + std::to_string(i) + " plane");
            }
        }
    }

    // Closed 2-manifold: each edge shared by exactly two facets, Euler V-E+F=2.
    std::map<std::pair<uint32_t, uint32_t>, int> edge_use;
    std::vector<bool> referenced(poly.vertices.size(), false);
    for (const Facet& f : poly.facets) {
        const uint32_t idx[3] = {f.v0, f.v1, f.v2};
        for (int k = 0; k < 3; ++k) {
            referenced[idx[k]] = true;
            const uint32_t a = idx[k], b = idx[(k + 1) % 3];
            ++edge_use[{std::min(a, b), std::max(a, b)}];
        }
    }
    for (const auto& [edge, uses] : edge_use) {
        if (uses != 2) {
            throw OpenSurfaceError("edge (" + std::to_string(edge.first) + "," +
                                   std::to_string(edge.second) + ") used by " +
                                   std::to_string(uses) + " facets");
        }
    }
    long v_used = 0;
    for (bool r : referenced) v_used += r ? 1 : 0;
    const long euler = v_used - static_cast<long>(edge_use.size()) +
                       static_cast<long>(poly.facets.size());
    if (euler != 2) {
        throw OpenSurfaceError("surface is not a closed sphere-like mesh (V-E+F=" +
                               std::to_string(euler) + ")");
    }
    return poly;
}

}  // namespace aflclip
