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

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aflclip/aflclip.hpp"

namespace {

// Exit codes: 0 success, 2 input/validation, 3 query spec, 4 output I/O.
constexpr int kExitInput = 2;
constexpr int kExitQuerySpec = 3;
constexpr int kExitOutput = 4;

struct LineSpecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

aflclip::Point3 parse_point(const std::string& s) {
    std::istringstream in(s);
    aflclip::Point3 p;
    char c1 = 0, c2 = 0;
    if (!(in >> p.x >> c1 >> p.y >> c2 >> p.z) || c1 != ',' || c2 != ',' || !(in >> std::ws).eof()) {
        throw LineSpecError("expected 'x,y,z', got '" + s + "'");
    }
    return p;
}

aflclip::Line3 parse_line_spec(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) {
        throw LineSpecError("expected 'ax,ay,az:sx,sy,sz', got '" + s + "'");
    }
    aflclip::Line3 line{parse_point(s.substr(0, colon)), parse_point(s.substr(colon + 1))};
    if (aflclip::norm2(line.dir) == 0.0) throw LineSpecError("line direction is zero");
    return line;
}

aflclip::GridSpec parse_grid(const std::string& s) {
    const auto x = s.find('x');
    if (x == std::string::npos) throw CLI::ValidationError("--grid", "expected KxQ, got '" + s + "'");
    try {
        const unsigned long k = std::stoul(s.substr(0, x));
        const unsigned long q = std::stoul(s.substr(x + 1));
        if (k == 0 || q == 0) throw std::invalid_argument("zero");
        return {static_cast<uint32_t>(k), static_cast<uint32_t>(q)};
    } catch (const std::exception&) {
        throw CLI::ValidationError("--grid", "expected KxQ, got '" + s + "'");
    }
}

std::string fmt_point(const aflclip::Point3& p) {
    std::ostringstream out;
    out << '(' << p.x << ',' << p.y << ',' << p.z << ')';
    return out.str();
}

void print_result(const aflclip::ClipResult& r, const aflclip::QueryStats* stats) {
    using aflclip::ClipKind;
    switch (r.kind) {
        case ClipKind::Empty:
            std::cout << "EMPTY";
            break;
        case ClipKind::Point:
            std::cout << "POINT t=" << r.t_in << " at " << fmt_point(r.entry_point);
            if (r.entry_facet) std::cout << " facet=" << *r.entry_facet;
            break;
        case ClipKind::Segment:
            std::cout << "SEGMENT t=[" << r.t_in << ',' << r.t_out << "] in="
                      << fmt_point(r.entry_point);
            if (r.entry_facet) std::cout << " facet=" << *r.entry_facet;
            std::cout << " out=" << fmt_point(r.exit_point);
            if (r.exit_facet) std::cout << " facet=" << *r.exit_facet;
            break;
    }
    if (stats) {
        std::cout << "  |omega1|=" << stats->omega1 << " |omega2|=" << stats->omega2
                  << " |omega|=" << stats->omega << " detail_tests=" << stats->detail_tests;
    }
    std::cout << '\n';
}

bool results_agree(const aflclip::ClipResult& a, const aflclip::ClipResult& b) {
    using aflclip::ClipKind;
    const auto near = [](double x, double y) {
        return std::abs(x - y) <= 1e-9 * (1.0 + std::max(std::abs(x), std::abs(y)));
    };
    if (a.kind != b.kind) {
        const auto graze = [&](const aflclip::ClipResult& pt, const aflclip::ClipResult& seg) {
            return pt.kind == ClipKind::Point && seg.kind == ClipKind::Segment &&
                   near(seg.t_in, seg.t_out) && near(pt.t_in, 0.5 * (seg.t_in + seg.t_out));
        };
        return graze(a, b) || graze(b, a);
    }
    if (a.kind == ClipKind::Empty) return true;
    return near(a.t_in, b.t_in) && near(a.t_out, b.t_out);
}

int run_preprocess(const std::string& mesh_path, const std::string& out_path,
                   const std::optional<aflclip::GridSpec>& grid, uint32_t cap, unsigned threads) {
    using namespace aflclip;
    ConvexPolyhedron poly;
    try {
        auto [vertices, faces] = load_off(mesh_path);
        poly = validate_convex(std::move(vertices), faces);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }

    const auto t0 = std::chrono::steady_clock::now();
    PreprocessConfig cfg;
    cfg.grid = grid;
    cfg.cap = cap;
    cfg.threads = threads;
    const PreprocessedPolyhedron prep = preprocess(poly, cfg);
    const auto t1 = std::chrono::steady_clock::now();

    std::cout << "N=" << poly.facet_count() << '\n';
    for (int j = 0; j < 6; ++j) {
        const SemidualGrid& g = prep.grids[static_cast<std::size_t>(j)];
        uint64_t bits = 0;
        for (const FacetBitset& cell : g.cells) bits += cell.count();
        std::cout << "AFL[" << j + 1 << "] axis=" << axis_name(g.proj_axis)
                  << " kind=" << dual_kind_name(g.kind) << " grid=" << g.spec.n_slope << 'x'
                  << g.spec.n_offset << " bits_set=" << bits << '\n';
    }
    std::cout << "preprocess_ms="
              << std::chrono::duration<double, std::milli>(t1 - t0).count() << '\n';

    try {
        save_cache(prep, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitOutput;
    }
    std::cout << "wrote " << out_path << '\n';
    return 0;
}

int run_clip(const std::string& cache_path, const std::vector<std::string>& line_specs,
             bool segment_mode, bool stats_flag, const std::string& compare_mesh) {
    using namespace aflclip;
    PreprocessedPolyhedron prep;
    try {
        prep = load_cache(cache_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    std::optional<ConvexPolyhedron> baseline;
    if (!compare_mesh.empty()) {
        try {
            auto [vertices, faces] = load_off(compare_mesh);
            baseline = validate_convex(std::move(vertices), faces);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << '\n';
            return kExitInput;
        }
    }

    const ClipMode mode = segment_mode ? ClipMode::Segment : ClipMode::Line;
    for (const std::string& spec : line_specs) {
        Line3 line;
        try {
            line = parse_line_spec(spec);
        } catch (const LineSpecError& e) {
            std::cerr << "error: " << e.what() << '\n';
            return kExitQuerySpec;
        }
        QueryStats stats;
        const ClipResult r = clip_line(prep, line, mode, &stats);
        print_result(r, stats_flag ? &stats : nullptr);
        if (baseline) {
            const ClipResult cb = clip_line_cb(*baseline, line, mode);
            std::cout << "CB: ";
            print_result(cb, nullptr);
            std::cout << (results_agree(r, cb) ? "AGREE" : "DISAGREE") << '\n';
        }
    }
    return 0;
}

int run_bench_cmd(const std::vector<uint32_t>& n_list, const std::vector<std::string>& grid_list,
                  uint32_t lines, uint64_t seed, unsigned threads, const std::string& csv_path,
                  const std::string& svg_path) {
    using namespace aflclip;
    BenchConfig cfg;
    if (!n_list.empty()) cfg.facet_counts = n_list;
    if (!grid_list.empty()) {
        cfg.grids.clear();
        for (const std::string& g : grid_list) cfg.grids.push_back(parse_grid(g));
    }
    cfg.lines = lines;
    cfg.seed = seed;
    cfg.threads = threads;

    const auto rows = run_bench(cfg);
    {
        std::ofstream out(csv_path, std::ios::trunc);
        if (!out) {
            std::cerr << "error: cannot open '" << csv_path << "' for writing\n";
            return kExitOutput;
        }
        write_csv(rows, out);
        if (!out.flush()) {
            std::cerr << "error: write to '" << csv_path << "' failed\n";
            return kExitOutput;
        }
    }
    if (!svg_path.empty()) {
        std::ofstream out(svg_path, std::ios::trunc);
        if (!out) {
            std::cerr << "error: cannot open '" << svg_path << "' for writing\n";
            return kExitOutput;
        }
        write_svg(rows, out);
        if (!out.flush()) {
            std::cerr << "error: write to '" << svg_path << "' failed\n";
            return kExitOutput;
        }
    }
    std::cout << "wrote " << csv_path;
    if (!svg_path.empty()) std::cout << " and " << svg_path;
    std::cout << " (" << rows.size() << " rows)\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Line clipping against convex polyhedra with AFL-grid preprocessing"};
    app.require_subcommand(1);

    // preprocess
    auto* prep_cmd = app.add_subcommand("preprocess", "validate a mesh and build its AFL cache");
    std::string mesh_path, cache_out;
    std::string grid_arg;
    bool auto_grid = false;
    uint32_t cap = 1024;
    unsigned threads = 1;
    prep_cmd->add_option("mesh", mesh_path, "input OFF mesh")->required();
    prep_cmd->add_option("-o,--output", cache_out, "output AFL1 cache file")->required();
    auto* grid_opt = prep_cmd->add_option("--grid", grid_arg, "fixed grid resolution KxQ");
    prep_cmd->add_flag("--auto", auto_grid, "derive grid resolution from the mesh (default)")
        ->excludes(grid_opt);
    prep_cmd->add_option("--cap", cap, "auto-sizing cap per grid dimension");
    prep_cmd->add_option("--threads", threads, "grid construction workers");

    // clip
    auto* clip_cmd = app.add_subcommand("clip", "clip lines against a preprocessed cache");
    std::string cache_path, lines_file, compare_mesh;
    std::vector<std::string> line_specs;
    std::vector<std::string> through_pts;
    bool segment_mode = false, stats_flag = false;
    clip_cmd->add_option("cache", cache_path, "AFL1 cache file")->required();
    clip_cmd->add_option("--line", line_specs, "line as ax,ay,az:sx,sy,sz (repeatable)");
    clip_cmd->add_option("--through", through_pts, "line through two points x,y,z x,y,z")
        ->expected(2);
    clip_cmd->add_option("--lines-file", lines_file, "file with one line spec per row");
    clip_cmd->add_flag("--segment", segment_mode, "clip the [0,1] parameter segment only");
    clip_cmd->add_flag("--stats", stats_flag, "print candidate-set sizes");
    clip_cmd->add_option("--compare-cb", compare_mesh,
                         "also run the Cyrus-Beck baseline on this mesh and compare");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "run the benchmark matrix");
    std::vector<uint32_t> n_list;
    std::vector<std::string> grid_list;
    uint32_t bench_lines = 1000;
    uint64_t seed = 1;
    unsigned bench_threads = 1;
    std::string csv_path, svg_path;
    bench_cmd->add_option("--n", n_list, "facet counts")->delimiter(',');
    bench_cmd->add_option("--grid", grid_list, "grid resolutions KxQ")->delimiter(',');
    bench_cmd->add_option("--lines", bench_lines, "clipped lines per case");
    bench_cmd->add_option("--seed", seed, "RNG seed");
    bench_cmd->add_option("--threads", bench_threads, "preprocessing workers");
    bench_cmd->add_option("--csv", csv_path, "output CSV path")->required();
    bench_cmd->add_option("--svg", svg_path, "optional SVG chart path");

    CLI11_PARSE(app, argc, argv);

    if (prep_cmd->parsed()) {
        std::optional<aflclip::GridSpec> grid;
        if (!grid_arg.empty()) {
            try {
                grid = parse_grid(grid_arg);
            } catch (const CLI::Error& e) {
                std::cerr << "error: " << e.what() << '\n';
                return kExitInput;
            }
        }
        return run_preprocess(mesh_path, cache_out, grid, cap, threads);
    }
    if (clip_cmd->parsed()) {
        std::vector<std::string> specs = line_specs;
        if (through_pts.size() == 2) {
            try {
                const aflclip::Point3 p1 = parse_point(through_pts[0]);
                const aflclip::Point3 p2 = parse_point(through_pts[1]);
                std::ostringstream spec;
                spec << p1.x << ',' << p1.y << ',' << p1.z << ':' << p2.x - p1.x << ','
                     << p2.y - p1.y << ',' << p2.z - p1.z;
                specs.push_back(spec.str());
            } catch (const LineSpecError& e) {
                std::cerr << "error: " << e.what() << '\n';
                return kExitQuerySpec;
            }
        }
        if (!lines_file.empty()) {
            std::ifstream in(lines_file);
            if (!in) {
                std::cerr << "error: cannot open '" << lines_file << "'\n";
                return kExitInput;
            }
            std::string row;
            while (std::getline(in, row)) {
                if (!row.empty() && row.find_first_not_of(" \t\r") != std::string::npos) {
                    specs.push_back(row);
                }
            }
        }
        if (specs.empty()) {
            std::cerr << "error: no line given (use --line, --through or --lines-file)\n";
            return kExitQuerySpec;
        }
        return run_clip(cache_path, specs, segment_mode, stats_flag, compare_mesh);
    }
    return run_bench_cmd(n_list, grid_list, bench_lines, seed, bench_threads, csv_path, svg_path);
}
