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

#include "tristereo/cost_volume.hpp"
#include "tristereo/imaging.hpp"

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

namespace tristereo {

/// MRF weights in level units: E = sum D_p(d_p) + lambda * sum min(|d_p - d_q|, tau)
/// over 4-connected neighbour pairs.
struct EnergyParams {
    double smoothing_coefficient = 2.0;  ///< lambda
    int truncation = 2;                  ///< tau, levels
    double cost_scale = 64.0;            ///< real-to-integer factor for graph cuts

    void validate() const;
};

enum class Optimizer { WTA, GraphCut };

std::string_view to_string(Optimizer optimizer);
Optimizer parse_optimizer(std::string_view text);

/// Per-pixel argmin; ties go to the smallest level.
DisparityMap wta_disparity(const CostVolume& vol, int precision);

double energy(const DisparityMap& map, const CostVolume& vol, const EnergyParams& ep);

/// Cost volume rounded to integers at cost_scale.
struct IntegerCostVolume {
    int width = 0;
    int height = 0;
    int levels = 0;
    std::vector<std::int64_t> data;

    std::int64_t at(int x, int y, int t) const {
        return data[(static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)) *
                        static_cast<std::size_t>(levels) +
                    static_cast<std::size_t>(t)];
    }
};

/// Throws ConfigError when a scaled entry exceeds 2^53 in magnitude.
IntegerCostVolume to_integer_costs(const CostVolume& vol, const EnergyParams& ep);

/// lambda * cost_scale, rounded; same overflow rule as to_integer_costs.
std::int64_t integer_smoothness_weight(const EnergyParams& ep);

std::int64_t integer_energy(const DisparityMap& map, const IntegerCostVolume& vol, std::int64_t lambda,
                            int truncation);

/// One expansion move, reported through ExpansionOptions::trace.
struct ExpansionMove {
    int sweep = 0;
    int label = 0;
    std::int64_t energy_before = 0;
    std::int64_t energy_after = 0;  ///< energy of the best move for this label
    bool accepted = false;
};

struct ExpansionOptions {
    int max_sweeps = 4;
    std::function<void(const ExpansionMove&)> trace;
};

struct ExpansionResult {
    DisparityMap map;
    std::int64_t initial_energy = 0;  ///< integer units
    std::int64_t final_energy = 0;
    int sweeps = 0;
    int accepted_moves = 0;
};

/// Alpha-expansion over labels 0..L-1 in increasing order. A move is kept only
/// when it strictly lowers the integer energy. Stops after a sweep without
/// accepted moves or after max_sweeps. Pixels tied between keeping their label
/// and switching keep their label.
ExpansionResult alpha_expansion(const CostVolume& vol, const EnergyParams& ep, const DisparityMap& init,
                                const ExpansionOptions& options = {});

} // namespace tristereo
