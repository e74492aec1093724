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

#include "tristereo/report.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace tristereo {

namespace {

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

std::string field(const std::optional<double>& v, int digits) {
    return v ? fixed(*v, digits) : std::string();
}

// Higher is better.
double score(const SweepRow& r) {
    if (r.psnr_db) {
        return *r.psnr_db;
    }
    if (r.bad_nonocc) {
        return -*r.bad_nonocc;
    }
    return 0.0;
}

std::string precision_name(int p) {
    switch (p) {
    case 1:
        return "Pixel";
    case 2:
        return "Half-pixel";
    case 4:
        return "Quarter-pixel";
    default:
        return "x" + std::to_string(p);
    }
}

} // namespace

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << kSweepCsvHeader << '\n';
    for (const auto& r : rows) {
        out << r.sequence << ',' << r.mode << ',' << r.precision << ',' << fixed(r.lambda, 3) << ','
            << field(r.psnr_db, 4) << ',' << field(r.bad_nonocc, 4) << ',' << field(r.bad_all, 4) << ','
            << field(r.bad_disc, 4) << ',' << field(r.runtime_ms, 0) << '\n';
    }
}

std::vector<SweepRow> best_over_lambda(const std::vector<SweepRow>& rows) {
    std::vector<SweepRow> best;
    for (const auto& r : rows) {
        auto it = std::find_if(best.begin(), best.end(), [&](const SweepRow& b) {
            return b.sequence == r.sequence && b.mode == r.mode && b.precision == r.precision;
        });
        if (it == best.end()) {
            best.push_back(r);
        } else if (score(r) > score(*it) || (score(r) == score(*it) && r.lambda < it->lambda)) {
            *it = r;
        }
    }
    return best;
}

std::string format_results_table(const std::vector<SweepRow>& best) {
    std::vector<std::string> sequences, modes;
    std::vector<int> precisions;
    for (const auto& r : best) {
        if (std::find(sequences.begin(), sequences.end(), r.sequence) == sequences.end()) {
            sequences.push_back(r.sequence);
        }
        if (std::find(modes.begin(), modes.end(), r.mode) == modes.end()) {
            modes.push_back(r.mode);
        }
        if (std::find(precisions.begin(), precisions.end(), r.precision) == precisions.end()) {
            precisions.push_back(r.precision);
        }
    }
    const bool psnr = std::any_of(best.begin(), best.end(), [](const SweepRow& r) { return r.psnr_db.has_value(); });
    auto value = [&](const std::string& seq, const std::string& mode, int p) -> std::optional<double> {
        for (const auto& r : best) {
            if (r.sequence == seq && r.mode == mode && r.precision == p) {
                return psnr ? r.psnr_db : r.bad_nonocc;
            }
        }
        return std::nullopt;
    };

    std::vector<std::vector<std::string>> cells;
    std::vector<std::string> head1{""}, head2{"Sequence"};
    for (int p : precisions) {
        for (std::size_t m = 0; m < modes.size(); ++m) {
            head1.push_back(m == 0 ? precision_name(p) : "");
            head2.push_back(modes[m] + (psnr ? " [dB]" : " [%]"));
        }
        if (modes.size() > 1) {
            head1.emplace_back("");
            head2.emplace_back("Gain");
        }
    }
    cells.push_back(head1);
    cells.push_back(head2);
    for (const auto& seq : sequences) {
        std::vector<std::string> row{seq};
        for (int p : precisions) {
            for (const auto& mode : modes) {
                const auto v = value(seq, mode, p);
                row.push_back(v ? fixed(*v, 2) : "-");
            }
            if (modes.size() > 1) {
                const auto first = value(seq, modes.front(), p);
                const auto last = value(seq, modes.back(), p);
                // For bad-pixel tables a reduction is the gain.
                row.push_back(first && last ? fixed(psnr ? *last - *first : *first - *last, 2) : "-");
            }
        }
        cells.push_back(row);
    }

    std::vector<std::size_t> widths(cells.front().size(), 0);
    for (const auto& row : cells) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            widths[c] = std::max(widths[c], row[c].size());
        }
    }
    std::ostringstream out;
    for (const auto& row : cells) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << (c ? " | " : "") << row[c] << std::string(widths[c] - row[c].size(), ' ');
        }
        out << '\n';
    }
    return out.str();
}

} // namespace tristereo
