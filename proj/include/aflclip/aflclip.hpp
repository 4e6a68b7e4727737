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

#include "aflclip/afl.hpp"
#include "aflclip/bench.hpp"
#include "aflclip/cache_io.hpp"
#include "aflclip/clip_result.hpp"
#include "aflclip/clipper.hpp"
#include "aflclip/core.hpp"
#include "aflclip/cyrus_beck.hpp"
#include "aflclip/errors.hpp"
#include "aflclip/off_io.hpp"
#include "aflclip/oracle.hpp"
#include "aflclip/polyhedron.hpp"
#include "aflclip/projection.hpp"
#include "aflclip/semidual.hpp"
