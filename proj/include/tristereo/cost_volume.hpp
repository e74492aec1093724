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

#include "tristereo/imaging.hpp"
#include "tristereo/occlusion.hpp"
#include "tristereo/similarity.hpp"

#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

namespace tristereo {

/// Real-valued cost per (x, y, t); the candidate axis is innermost.
class CostVolume {
public:
    CostVolume() = default;
    CostVolume(int width, int height, int levels, double fill = 0.0);

    int width() const { return width_; }
    int height() const { return height_; }
    int levels() const { return levels_; }

    double at(int x, int y, int t) const { return data_[index(x, y, t)]; }
    void set(int x, int y, int t, double v) { data_[index(x, y, t)] = v; }
    std::span<const double> pixel(int x, int y) const {
        return std::span<const double>(data_).subspan(index(x, y, 0), static_cast<std::size_t>(levels_));
    }
    std::span<const double> data() const { return data_; }

    bool operator==(const CostVolume&) const = default;

private:
    std::size_t index(int x, int y, int t) const {
        return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x)) *
                   static_cast<std::size_t>(levels_) +
               static_cast<std::size_t>(t);
    }

    int width_ = 0;
    int height_ = 0;
    int levels_ = 0;
    std::vector<double> data_;
};

enum class CostModel {
    Sum,       ///< sim_L + sim_R
    Min,       ///< min(sim_L, sim_R)
    OccAware,  ///< mean over the side views that are not occluded
};

std::string_view to_string(CostModel model);
/// Accepts "sum", "min", "occ_aware" (case-insensitive). Throws ConfigError.
CostModel parse_cost_model(std::string_view text);

struct CostMode {
    CostModel model = CostModel::Sum;
    /// Cost of a candidate hidden in both views. Only read by OccAware.
    double occlusion_penalty = 1.0;

    void validate() const;
};

/// Single entry of the cost volume.
double cost_at(const LumaImage& center, const LumaImage& left, const LumaImage& right, int x, int y, int t,
               const CostMode& mode, const OcclusionVolume& occ, const MatchParams& p);

/// Combine precomputed left/right similarities for one candidate.
double combine_cost(double sim_left, double sim_right, bool visible_left, bool visible_right, const CostMode& mode);

/// Left and right similarity for every (x, y, t). Independent of the occlusion
/// state, so the iterative loop computes it once and recombines per iteration.
struct SimilarityVolumes {
    CostVolume left;
    CostVolume right;
};

SimilarityVolumes compute_similarity(const LumaImage& center, const LumaImage& left, const LumaImage& right,
                                     const MatchParams& p);

CostVolume combine_costs(const SimilarityVolumes& sims, const CostMode& mode, const OcclusionVolume& occ);

CostVolume build_cost_volume(const LumaImage& center, const LumaImage& left, const LumaImage& right,
                             const CostMode& mode, const OcclusionVolume& occ, const MatchParams& p);

/// Twice the mean of min(sim_L, sim_R) over entries below kLargeCost.
double default_occlusion_penalty(const SimilarityVolumes& sims);

/// Per-level PGMs (cost_NNN.pgm), min-max normalized over the whole volume,
/// ignoring kLargeCost entries.
void dump_cost_slices(const CostVolume& volume, const std::filesystem::path& dir);

} // namespace tristereo
