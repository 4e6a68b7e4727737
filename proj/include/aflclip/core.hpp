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

namespace aflclip {

// Tolerances are relative wherever a natural scale exists, so behaviour is
// invariant under uniform scaling of the scene.
namespace tol {
inline constexpr double parallel = 1e-12;         // |n.s| <= parallel*|n||s| counts as parallel
inline constexpr double barycentric = 1e-10;      // boundary inflation for triangle containment
inline constexpr double convexity = 1e-9;         // x bounding radius: convexity slack
inline constexpr double degenerate_area = 1e-12;  // x (longest edge)^2: facet area floor
inline constexpr double point_collapse = 1e-9;    // t_in ~ t_out => Point, scaled by 1+|t|
inline constexpr double frame_inflate = 1e-12;    // bounding-frame half-extent inflation
}  // namespace tol

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    constexpr Vec3() = default;
    constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    bool operator==(const Vec3&) const = default;
};

using Point3 = Vec3;

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm2(const Vec3& v) { return dot(v, v); }
inline double norm(const Vec3& v) { return std::sqrt(norm2(v)); }

// Plane n.x + d = 0; eval's sign classifies the side of a point.
struct Plane {
    Vec3 n;
    double d = 0.0;
    double eval(const Point3& p) const { return dot(n, p) + d; }
    bool operator==(const Plane&) const = default;
};

// Parametric line x(t) = anchor + t*dir.
struct Line3 {
    Point3 anchor;
    Vec3 dir;
    Point3 at(double t) const { return anchor + dir * t; }
};

struct Vec2 {
    double u = 0.0, v = 0.0;
    bool operator==(const Vec2&) const = default;
};

enum class Axis : int { X = 0, Y = 1, Z = 2 };

inline const char* axis_name(Axis a) {
    switch (a) {
        case Axis::X: return "X";
        case Axis::Y: return "Y";
        default: return "Z";
    }
}

// Orthographic projection dropping one axis. The retained coordinate pairs
// are fixed once and shared by preprocessing and queries:
//   drop X -> (y, z), drop Y -> (z, x), drop Z -> (x, y).
inline Vec2 project(const Point3& p, Axis drop) {
    switch (drop) {
        case Axis::X: return {p.y, p.z};
        case Axis::Y: return {p.z, p.x};
        default: return {p.x, p.y};
    }
}

}  // namespace aflclip
