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
#include "tristereo/optimizer.hpp"
#include "tristereo/similarity.hpp"

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <vector>

namespace tristereo {

struct PipelineConfig {
    CostModel model = CostModel::OccAware;
    /// Unset: twice the mean min(sim_L, sim_R) of the first iteration.
    std::optional<double> occlusion_penalty;
    MatchParams match;
    /// smoothing_coefficient is given per pixel of disparity; the optimizer
    /// receives it multiplied by match.precision.
    EnergyParams energy;
    int iterations = 3;
    int max_sweeps = 4;
    Optimizer optimizer = Optimizer::GraphCut;
    /// When set, per-iteration maps, warped side maps and stats are written here.
    std::optional<std::filesystem::path> debug_dir;
    /// Also dump per-level occlusion slices into debug_dir.
    bool debug_occlusion_slices = false;

    void validate() const;
    /// Energy parameters in level units as handed to the optimizer.
    EnergyParams level_energy() const;
};

struct IterationDiagnostics {
    int iteration = 0;                 ///< 1-based
    double energy = 0.0;               ///< of the chosen map under this iteration's costs
    double wta_energy = 0.0;           ///< of this iteration's WTA map, for comparison
    std::size_t changed_pixels = 0;    ///< vs the previous iteration; all pixels on iteration 1
    double occluded_candidates = 0.0;  ///< fraction with at least one side hidden
    double occluded_both = 0.0;        ///< fraction hidden in both views
    int sweeps = 0;                    ///< expansion sweeps, 0 for WTA
};

struct PipelineResult {
    DisparityMap disparity;
    std::vector<IterationDiagnostics> iterations;
    double occlusion_penalty = 0.0;
    bool converged = false;  ///< stopped because a map repeated
};

/// Iterative three-view estimation. Iteration 1 treats every candidate as
/// visible; each later iteration warps the previous center map to both side
/// cameras, rebuilds the visibility flags and re-optimizes seeded with the
/// previous map. Sum and Min models run a single iteration.
PipelineResult run_pipeline(const LumaImage& center, const LumaImage& left, const LumaImage& right,
                            const PipelineConfig& cfg,
                            const std::function<void(const ExpansionMove&)>& trace = {});

} // namespace tristereo
