// Copyright 2026 The tristereo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "manifest.hpp"
#include "tristereo/report.hpp"

#include <cstdint>
#include <filesystem>
#include <vector>

namespace spdlog {
class logger;
}

namespace tristereo::app {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitIo = 2,
    kExitInternal = 3,
};

/// Runs the pipeline on every frame of [input]; writes one disparity PGM and
/// one JSON diagnostics file per frame into the output directory.
void cmd_estimate(const RunManifest& m, spdlog::logger& log);

/// Evaluates every (mode, precision, lambda) cell of the grid. Writes
/// sweep.csv, summary.csv, summary.txt and the per-cell maps. Returns the rows
/// in grid order.
std::vector<SweepRow> cmd_sweep(const RunManifest& m, spdlog::logger& log);

/// Scores a stored disparity map against [ground_truth] and/or a synthesized
/// image against [synthesis] reference; writes evaluation.txt.
void cmd_evaluate(const RunManifest& m, spdlog::logger& log);

void cmd_scene(const std::filesystem::path& spec_path, std::uint64_t seed, const std::filesystem::path& out_dir,
               spdlog::logger& log);

/// Full command line front-end; returns the process exit code.
int run_cli(int argc, char** argv);

} // namespace tristereo::app
