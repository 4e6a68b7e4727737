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
#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "aflclip/core.hpp"
#include "aflclip/errors.hpp"

namespace aflclip {
namespace detail {

// Whitespace tokenizer that remembers line/column for diagnostics and skips
// '#' comments to end of line.
class OffTokenizer {
public:
    explicit OffTokenizer(std::string text) : text_(std::move(text)) {}

    bool next(std::string& tok) {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else {
                break;
            }
        }
        if (pos_ >= text_.size()) return false;
        tok_line_ = line_;
        tok_col_ = col_;
        tok.clear();
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            tok.push_back(text_[pos_]);
            advance();
        }
        return true;
    }

    std::string expect(const char* what) {
        std::string tok;
        if (!next(tok)) throw ParseError(std::string("unexpected end of file, expected ") + what,
                                         line_, col_);
        return tok;
    }

    double expect_real(const char* what) {
        const std::string tok = expect(what);
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size()) {
            throw ParseError(std::string("expected ") + what + ", got '" + tok + "'", tok_line_,
                             tok_col_);
        }
        return value;
    }

    long expect_int(const char* what) {
        const std::string tok = expect(what);
        std::size_t used = 0;
        long value = 0;
        try {
            value = std::stol(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size()) {
            throw ParseError(std::string("expected ") + what + ", got '" + tok + "'", tok_line_,
                             tok_col_);
        }
        return value;
    }

    int token_line() const { return tok_line_; }
    int token_column() const { return tok_col_; }

private:
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    std::string text_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    int tok_line_ = 1, tok_col_ = 1;
};

}  // namespace detail

// Parses an ASCII OFF mesh. Faces with more than three vertices are fan
// triangulated around their first vertex.
inline std::pair<std::vector<Point3>, std::vector<std::array<uint32_t, 3>>> load_off(
    const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    detail::OffTokenizer tok(buf.str());

    const std::string header = tok.expect("OFF header");
    if (header != "OFF") {
        throw UnsupportedFormatError("expected OFF header, got '" + header + "'");
    }
    const long nv = tok.expect_int("vertex count");
    const long nf = tok.expect_int("face count");
    tok.expect_int("edge count");
    if (nv < 0 || nf < 0) {
        throw ParseError("negative counts", tok.token_line(), tok.token_column());
    }

    std::vector<Point3> vertices;
    vertices.reserve(static_cast<std::size_t>(nv));
    for (long i = 0; i < nv; ++i) {
        const double x = tok.expect_real("vertex x");
        const double y = tok.expect_real("vertex y");
        const double z = tok.expect_real("vertex z");
        vertices.push_back({x, y, z});
    }

    std::vector<std::array<uint32_t, 3>> faces;
    faces.reserve(static_cast<std::size_t>(nf));
    for (long i = 0; i < nf; ++i) {
        const long k = tok.expect_int("face vertex count");
        if (k < 3) throw ParseError("face needs at least 3 vertices", tok.token_line(),
                                    tok.token_column());
        std::vector<uint32_t> idx(static_cast<std::size_t>(k));
        for (long j = 0; j < k; ++j) {
            const long v = tok.expect_int("face vertex index");
            if (v < 0 || v >= nv) {
                throw ParseError("face vertex index out of range", tok.token_line(),
                                 tok.token_column());
            }
            idx[static_cast<std::size_t>(j)] = static_cast<uint32_t>(v);
        }
        for (std::size_t j = 1; j + 1 < idx.size(); ++j) {  // fan around idx[0]
            faces.push_back({idx[0], idx[j], idx[j + 1]});
        }
    }
    return {std::move(vertices), std::move(faces)};
}

}  // namespace aflclip
