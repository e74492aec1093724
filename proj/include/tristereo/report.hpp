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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tristereo {

/// One cell of a parameter sweep. Missing metrics are written as empty CSV fields.
struct SweepRow {
    std::string sequence;
    std::string mode;
    int precision = 1;
    double lambda = 0.0;
    std::optional<double> psnr_db;
    std::optional<double> bad_nonocc;
    std::optional<double> bad_all;
    std::optional<double> bad_disc;
    std::optional<double> runtime_ms;
};

inline constexpr const char* kSweepCsvHeader =
    "sequence,mode,precision,lambda,psnr_db,bad_nonocc,bad_all,bad_disc,runtime_ms";

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// Best row over lambda for every (sequence, mode, precision): highest PSNR
/// when present, otherwise lowest nonocc bad-pixel rate. Ties keep the
/// smallest lambda. Order follows first appearance in `rows`.
std::vector<SweepRow> best_over_lambda(const std::vector<SweepRow>& rows);

/// Aligned text table: one line per sequence, a column group per precision
/// with the best value of every mode and the gain of the last mode over the
/// first.
std::string format_results_table(const std::vector<SweepRow>& best);

} // namespace tristereo
