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

#include <stdexcept>
#include <string>

namespace aflclip {

// Mesh/geometry validation failures.
struct NonConvexError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct OpenSurfaceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateFacetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateProjectionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateHullError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ZeroDirectionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotAxisParallelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BitsetLengthError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// File I/O failures.
struct ParseError : std::runtime_error {
    ParseError(const std::string& what, int line, int column)
        : std::runtime_error(what + " (line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ")"),
          line(line),
          column(column) {}
    int line;
    int column;
};
struct UnsupportedFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct VersionMismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ChecksumMismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace aflclip
