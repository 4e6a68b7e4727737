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

// End-to-end checks of the command-line tool: spawns the built binary and
// inspects exit codes and output.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "aflclip/aflclip.hpp"

namespace {

int failures = 0;

#define CLI_CHECK(cond)                                                        \
    do {                                                                       \
        if (!(cond)) {                                                         \
            ++failures;                                                        \
            std::cerr << "FAILED at line " << __LINE__ << ": " #cond << "\n";  \
        }                                                                      \
    } while (0)

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& args) {
    const auto out_path = std::filesystem::temp_directory_path() / "aflclip_cli_out.txt";
    const std::string cmd =
        std::string(AFLCLIP_BIN) + " " + args + " > " + out_path.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    r.output = buf.str();
    return r;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

}  // namespace

int main() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "aflclip_cli_test";
    fs::create_directories(dir);
    const fs::path cube_off = dir / "cube.off";
    const fs::path bad_off = dir / "dented.off";
    const fs::path cache = dir / "cube.afl";

    {
        std::ofstream out(cube_off);
        out << "OFF\n8 6 12\n"
               "0 0 0\n1 0 0\n1 1 0\n0 1 0\n0 0 1\n1 0 1\n1 1 1\n0 1 1\n"
               "4 0 1 2 3\n4 4 5 6 7\n4 0 1 5 4\n4 1 2 6 5\n4 2 3 7 6\n4 3 0 4 7\n";
    }
    {
        std::ofstream out(bad_off);
        out << "OFF\n5 6 9\n0 0 0\n1 0 0\n0 1 0\n0.2 0.2 1\n0.3 0.3 0.5\n"
               "3 0 1 3\n3 1 2 3\n3 2 0 3\n3 0 1 4\n3 1 2 4\n3 2 0 4\n";
    }

    // preprocess: fixed grid
    {
        const RunResult r =
            run("preprocess " + cube_off.string() + " -o " + cache.string() + " --grid 16x16");
        CLI_CHECK(r.exit_code == 0);
        CLI_CHECK(contains(r.output, "N=12"));
        CLI_CHECK(contains(r.output, "grid=16x16"));
    }
    // preprocess: non-convex input is a validation failure
    {
        const RunResult r =
            run("preprocess " + bad_off.string() + " -o " + (dir / "bad.afl").string());
        CLI_CHECK(r.exit_code == 2);
        CLI_CHECK(contains(r.output, "facet"));
    }
    // preprocess: --auto reports the suggested dimensions
    {
        const RunResult r = run("preprocess " + cube_off.string() + " -o " +
                                (dir / "auto.afl").string() + " --auto");
        CLI_CHECK(r.exit_code == 0);
        auto [vertices, faces] = aflclip::load_off(cube_off.string());
        const auto poly = aflclip::validate_convex(std::move(vertices), faces);
        const auto prep = aflclip::preprocess(poly);
        std::ostringstream expect;
        expect << "grid=" << prep.grids[0].spec.n_slope << 'x' << prep.grids[0].spec.n_offset;
        CLI_CHECK(contains(r.output, expect.str()));
    }
    // clip: the worked cube example
    {
        const RunResult r = run("clip " + cache.string() + " --line -1,0.5,0.5:1,0,0");
        CLI_CHECK(r.exit_code == 0);
        CLI_CHECK(contains(r.output, "SEGMENT t=[1,2]"));
    }
    // clip: comparison against the baseline agrees
    {
        const RunResult r = run("clip " + cache.string() +
                                " --line -1,0.5,0.5:1,0,0 --stats --compare-cb " +
                                cube_off.string());
        CLI_CHECK(r.exit_code == 0);
        CLI_CHECK(contains(r.output, "AGREE"));
        CLI_CHECK(contains(r.output, "|omega|"));
    }
    // clip: two-point form
    {
        const RunResult r =
            run("clip " + cache.string() + " --through -1,0.5,0.5 2,0.5,0.5 --segment");
        CLI_CHECK(r.exit_code == 0);
        CLI_CHECK(contains(r.output, "SEGMENT"));
    }
    // clip: zero direction is a query-spec error
    {
        const RunResult r = run("clip " + cache.string() + " --line 0,0,0:0,0,0");
        CLI_CHECK(r.exit_code == 3);
    }
    // clip: malformed spec
    {
        const RunResult r = run("clip " + cache.string() + " --line banana");
        CLI_CHECK(r.exit_code == 3);
    }
    // bench: csv + svg, deterministic stats columns
    {
        const fs::path csv = dir / "bench.csv";
        const fs::path svg = dir / "bench.svg";
        const RunResult r = run("bench --n 4,12 --grid 4x4 --lines 50 --seed 9 --csv " +
                                csv.string() + " --svg " + svg.string());
        CLI_CHECK(r.exit_code == 0);
        std::ifstream in(csv);
        std::string header, row1, row2, extra;
        std::getline(in, header);
        std::getline(in, row1);
        std::getline(in, row2);
        const bool more = static_cast<bool>(std::getline(in, extra));
        CLI_CHECK(contains(header, "omega_mean"));
        CLI_CHECK(!row1.empty() && !row2.empty());
        CLI_CHECK(!more || extra.empty());
        CLI_CHECK(fs::file_size(svg) > 0);

        const fs::path csv2 = dir / "bench2.csv";
        const RunResult r2 = run("bench --n 4,12 --grid 4x4 --lines 50 --seed 9 --csv " +
                                 csv2.string());
        CLI_CHECK(r2.exit_code == 0);
        // Stats columns (first seven fields) are identical across runs.
        std::ifstream in2(csv2);
        std::string header2, row1b, row2b;
        std::getline(in2, header2);
        std::getline(in2, row1b);
        std::getline(in2, row2b);
        const auto stat_prefix = [](const std::string& row) {
            std::size_t pos = 0;
            for (int commas = 0; commas < 7 && pos != std::string::npos; ++commas) {
                pos = row.find(',', pos + 1);
            }
            return row.substr(0, pos);
        };
        CLI_CHECK(stat_prefix(row1) == stat_prefix(row1b));
        CLI_CHECK(stat_prefix(row2) == stat_prefix(row2b));
    }
    // bench: unwritable output
    {
        const RunResult r = run("bench --n 4 --grid 4x4 --lines 10 --csv /nonexistent/x.csv");
        CLI_CHECK(r.exit_code == 4);
    }

    if (failures == 0) {
        std::cout << "cli tests passed\n";
        return 0;
    }
    std::cerr << failures << " cli check(s) failed\n";
    return 1;
}
