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
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "aflclip/afl.hpp"
#include "aflclip/errors.hpp"

// AFL1 cache: a preprocessed polyhedron persisted bit-exactly.
//
// All integers and IEEE-754 doubles are little-endian. Layout:
//   magic            4 bytes  "AFL1"
//   version          u16      (currently 1)
//   n_facets         u32
//   n_vertices       u32
//   vertices         n_vertices x (x,y,z: f64)
//   facets           n_facets x (v0,v1,v2: u32; nx,ny,nz: f64; d: f64)
//   frames           3 x (center_u, center_v, a: f64)      one per projection axis
//   grid specs       6 x (n_offset: u32, n_slope: u32)     axis-major, KQ before MP
//   bitset tables    6 tables, cells row-major (ii outer, jj inner),
//                    each cell ceil(n_facets/64) u64 words
//   crc32            u32 over every preceding byte
namespace aflclip {
namespace detail {

inline uint32_t crc32(const uint8_t* data, std::size_t len) {
    static const auto table = [] {
        std::array<uint32_t, 256> t{};
        for (uint32_t i = 0; i < 256; ++i) {
            uint32_t c = i;
            for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
            t[i] = c;
        }
        return t;
    }();
    uint32_t crc = 0xFFFFFFFFu;
    for (std::size_t i = 0; i < len; ++i) crc = table[(crc ^ data[i]) & 0xFF] ^ (crc >> 8);
    return crc ^ 0xFFFFFFFFu;
}

class ByteWriter {
public:
    void u16(uint16_t v) { le(v, 2); }
    void u32(uint32_t v) { le(v, 4); }
    void u64(uint64_t v) { le(v, 8); }
    void f64(double v) { u64(std::bit_cast<uint64_t>(v)); }
    void raw(const void* p, std::size_t n) {
        const auto* b = static_cast<const uint8_t*>(p);
        buf_.insert(buf_.end(), b, b + n);
    }
    const std::vector<uint8_t>& bytes() const { return buf_; }

private:
    void le(uint64_t v, int n) {
        for (int i = 0; i < n; ++i) buf_.push_back(static_cast<uint8_t>(v >> (8 * i)));
    }
    std::vector<uint8_t> buf_;
};

class ByteReader {
public:
    explicit ByteReader(const std::vector<uint8_t>& buf) : buf_(buf) {}
    uint16_t u16() { return static_cast<uint16_t>(le(2)); }
    uint32_t u32() { return static_cast<uint32_t>(le(4)); }
    uint64_t u64() { return le(8); }
    double f64() { return std::bit_cast<double>(u64()); }
    void raw(void* p, std::size_t n) {
        need(n);
        std::memcpy(p, buf_.data() + pos_, n);
        pos_ += n;
    }
    std::size_t position() const { return pos_; }

private:
    void need(std::size_t n) {
        if (pos_ + n > buf_.size()) throw IoError("cache file truncated");
    }
    uint64_t le(int n) {
        need(static_cast<std::size_t>(n));
        uint64_t v = 0;
        for (int i = 0; i < n; ++i) v |= static_cast<uint64_t>(buf_[pos_ + i]) << (8 * i);
        pos_ += static_cast<std::size_t>(n);
        return v;
    }
    const std::vector<uint8_t>& buf_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline constexpr uint16_t kCacheVersion = 1;

inline void save_cache(const PreprocessedPolyhedron& prep, const std::string& path) {
    detail::ByteWriter w;
    w.raw("AFL1", 4);
    w.u16(kCacheVersion);
    w.u32(prep.poly.facet_count());
    w.u32(static_cast<uint32_t>(prep.poly.vertices.size()));
    for (const Point3& v : prep.poly.vertices) {
        w.f64(v.x);
        w.f64(v.y);
        w.f64(v.z);
    }
    for (const Facet& f : prep.poly.facets) {
        w.u32(f.v0);
        w.u32(f.v1);
        w.u32(f.v2);
        w.f64(f.n.x);
        w.f64(f.n.y);
        w.f64(f.n.z);
        w.f64(f.d);
    }
    for (Axis axis : {Axis::X, Axis::Y, Axis::Z}) {
        const BoundingFrame& fr = prep.grid(axis, DualKind::KQ).frame;
        w.f64(fr.center.u);
        w.f64(fr.center.v);
        w.f64(fr.a);
    }
    for (const SemidualGrid& g : prep.grids) {
        w.u32(g.spec.n_offset);
        w.u32(g.spec.n_slope);
    }
    for (const SemidualGrid& g : prep.grids) {
        for (const FacetBitset& cell : g.cells) {
            for (uint64_t word : cell.words()) w.u64(word);
        }
    }
    const uint32_t crc = detail::crc32(w.bytes().data(), w.bytes().size());

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out.write(reinterpret_cast<const char*>(w.bytes().data()),
              static_cast<std::streamsize>(w.bytes().size()));
    const uint8_t crc_bytes[4] = {static_cast<uint8_t>(crc), static_cast<uint8_t>(crc >> 8),
                                  static_cast<uint8_t>(crc >> 16), static_cast<uint8_t>(crc >> 24)};
    out.write(reinterpret_cast<const char*>(crc_bytes), 4);
    if (!out) throw IoError("write to '" + path + "' failed");
}

inline PreprocessedPolyhedron load_cache(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::vector<uint8_t> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (buf.size() < 4 + 2 + 4) throw IoError("cache file truncated");

    const std::size_t body = buf.size() - 4;
    uint32_t stored = 0;
    for (int i = 0; i < 4; ++i) stored |= static_cast<uint32_t>(buf[body + i]) << (8 * i);
    if (detail::crc32(buf.data(), body) != stored) {
        throw ChecksumMismatchError("cache checksum does not match");
    }
    buf.resize(body);

    detail::ByteReader r(buf);
    char magic[4];
    r.raw(magic, 4);
    if (std::memcmp(magic, "AFL1", 4) != 0) {
        throw UnsupportedFormatError("not an AFL1 cache file");
    }
    const uint16_t version = r.u16();
    if (version != kCacheVersion) {
        throw VersionMismatchError("cache version " + std::to_string(version) +
                                   ", reader supports " + std::to_string(kCacheVersion));
    }

    const uint32_t n_facets = r.u32();
    const uint32_t n_vertices = r.u32();
    PreprocessedPolyhedron prep;
    prep.poly.vertices.resize(n_vertices);
    for (Point3& v : prep.poly.vertices) {
        v.x = r.f64();
        v.y = r.f64();
        v.z = r.f64();
    }
    prep.poly.facets.resize(n_facets);
    for (Facet& f : prep.poly.facets) {
        f.v0 = r.u32();
        f.v1 = r.u32();
        f.v2 = r.u32();
        f.n.x = r.f64();
        f.n.y = r.f64();
        f.n.z = r.f64();
        f.d = r.f64();
    }
    // Derived fields, recomputed exactly as validation computes them.
    prep.poly.centroid = {};
    for (const Point3& v : prep.poly.vertices) prep.poly.centroid = prep.poly.centroid + v;
    if (n_vertices > 0) prep.poly.centroid = prep.poly.centroid / static_cast<double>(n_vertices);
    prep.poly.bounding_radius = 0.0;
    for (const Point3& v : prep.poly.vertices) {
        prep.poly.bounding_radius = std::max(prep.poly.bounding_radius,
                                             norm(v - prep.poly.centroid));
    }

    BoundingFrame frames[3];
    for (BoundingFrame& fr : frames) {
        fr.center.u = r.f64();
        fr.center.v = r.f64();
        fr.a = r.f64();
    }
    for (int j = 0; j < 6; ++j) {
        SemidualGrid& g = prep.grids[static_cast<std::size_t>(j)];
        g.proj_axis = static_cast<Axis>(j / 2);
        g.kind = (j % 2 == 0) ? DualKind::KQ : DualKind::MP;
        g.frame = frames[j / 2];
        g.spec.n_offset = r.u32();
        g.spec.n_slope = r.u32();
        if (g.spec.n_offset == 0 || g.spec.n_slope == 0) {
            throw IoError("cache grid has zero dimension");
        }
    }
    for (SemidualGrid& g : prep.grids) {
        g.cells.assign(static_cast<std::size_t>(g.spec.n_offset) * g.spec.n_slope,
                       FacetBitset(n_facets));
        for (FacetBitset& cell : g.cells) {
            for (uint64_t& word : cell.words()) word = r.u64();
        }
    }
    return prep;
}

}  // namespace aflclip
