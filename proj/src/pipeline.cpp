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

#include "tristereo/pipeline.hpp"

#include "tristereo/errors.hpp"
#include "tristereo/occlusion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

namespace tristereo {

void PipelineConfig::validate() const {
    match.validate();
    energy.validate();
    if (iterations < 1) {
        throw ConfigError("iterations must be >= 1");
    }
    if (max_sweeps < 1) {
        throw ConfigError("max_sweeps must be >= 1");
    }
    if (occlusion_penalty && !(std::isfinite(*occlusion_penalty) && *occlusion_penalty > 0.0)) {
        throw ConfigError("occlusion penalty must be finite and positive");
    }
}

EnergyParams PipelineConfig::level_energy() const {
    EnergyParams ep = energy;
    ep.smoothing_coefficient *= match.precision;
    return ep;
}

namespace {

std::size_t count_changed(const DisparityMap& a, const DisparityMap& b) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.levels().size(); ++i) {
        n += a.levels()[i] != b.levels()[i];
    }
    return n;
}

void write_debug(const std::filesystem::path& dir, int iteration, const DisparityMap& map,
                 const SideDisparityPair* sides, const OcclusionVolume& occ, const IterationDiagnostics& diag,
                 double penalty, bool slices) {
    std::filesystem::create_directories(dir);
    const std::string prefix = "iter_" + std::to_string(iteration) + "_";
    // Scale so the full level range fits a byte.
    const double scale = std::max(1.0, std::floor(255.0 / std::max(1, occ.levels() - 1))) * map.precision();
    save_disparity(map, dir / (prefix + "disparity.pgm"), scale);
    if (sides) {
        save_disparity(sides->left, dir / (prefix + "warp_left.pgm"), scale);
        save_disparity(sides->right, dir / (prefix + "warp_right.pgm"), scale);
    }
    if (slices) {
        dump_occlusion_slices(occ, dir / (prefix + "occlusion"));
    }
    const auto stats = occ.stats();
    std::ofstream out(dir / (prefix + "stats.txt"));
    out << "iteration=" << iteration << '\n'
        << "energy=" << diag.energy << '\n'
        << "wta_energy=" << diag.wta_energy << '\n'
        << "changed_pixels=" << diag.changed_pixels << '\n'
        << "sweeps=" << diag.sweeps << '\n'
        << "occlusion_penalty=" << penalty << '\n'
        << "occluded_left=" << stats.occluded_left << '\n'
        << "occluded_right=" << stats.occluded_right << '\n'
        << "occluded_both=" << stats.occluded_both << '\n'
        << "occluded_any=" << stats.occluded_any << '\n'
        << "disparity_scale=" << scale << '\n';
    if (!out) {
        throw IoError("cannot write debug stats in " + dir.string());
    }
}

} // namespace

PipelineResult run_pipeline(const LumaImage& center, const LumaImage& left, const LumaImage& right,
                            const PipelineConfig& cfg, const std::function<void(const ExpansionMove&)>& trace) {
    cfg.validate();
    if (!center.same_shape(left) || !center.same_shape(right)) {
        throw ConfigError("center, left and right images must have identical dimensions");
    }
    const int w = center.width();
    const int h = center.height();
    const int levels = cfg.match.levels();
    const int precision = cfg.match.precision;
    const EnergyParams ep = cfg.level_energy();

    const SimilarityVolumes sims = compute_similarity(center, left, right, cfg.match);

    PipelineResult result;
    result.occlusion_penalty = cfg.occlusion_penalty.value_or(default_occlusion_penalty(sims));
    const CostMode mode{cfg.model, result.occlusion_penalty};

    const int iterations = cfg.model == CostModel::OccAware ? cfg.iterations : 1;
    OcclusionVolume occ = OcclusionVolume::all_visible(w, h, levels);
    std::optional<DisparityMap> previous;

    for (int it = 1; it <= iterations; ++it) {
        std::optional<SideDisparityPair> sides;
        if (previous) {
            sides = warp_to_sides(*previous);
            occ = build_occlusion_volume(*sides, levels);
        }
        const CostVolume vol = combine_costs(sims, mode, occ);
        const DisparityMap wta = wta_disparity(vol, precision);

        IterationDiagnostics diag;
        diag.iteration = it;
        DisparityMap map;
        if (cfg.optimizer == Optimizer::WTA) {
            map = wta;
        } else {
            ExpansionOptions options;
            options.max_sweeps = cfg.max_sweeps;
            options.trace = trace;
            ExpansionResult er = alpha_expansion(vol, ep, previous ? *previous : wta, options);
            diag.sweeps = er.sweeps;
            map = std::move(er.map);
        }
        diag.energy = energy(map, vol, ep);
        diag.wta_energy = energy(wta, vol, ep);
        diag.changed_pixels = previous ? count_changed(map, *previous) : map.size();
        const auto stats = occ.stats();
        diag.occluded_candidates = stats.occluded_any;
        diag.occluded_both = stats.occluded_both;
        result.iterations.push_back(diag);

        if (cfg.debug_dir) {
            write_debug(*cfg.debug_dir, it, map, sides ? &*sides : nullptr, occ, diag, result.occlusion_penalty,
                        cfg.debug_occlusion_slices);
        }

        const bool repeated = previous && map == *previous;
        previous = std::move(map);
        if (repeated) {
            result.converged = true;
            break;
        }
    }
    result.disparity = std::move(*previous);
    return result;
}

} // namespace tristereo
