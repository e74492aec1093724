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
#include "tristereo/similarity.hpp"

#include <cstdint>
#include <filesystem>
#include <vector>

namespace tristereo {

/// Virtual disparity maps at the left and right camera positions.
struct SideDisparityPair {
    DisparityMap left;
    DisparityMap right;
};

/// Per-(pixel, candidate) visibility flags for both side views.
class OcclusionVolume {
public:
    OcclusionVolume() = default;
    OcclusionVolume(int width, int height, int levels, bool fill);

    /// Every candidate visible in both views (no prior estimate).
    static OcclusionVolume all_visible(int width, int height, int levels) {
        return OcclusionVolume(width, height, levels, true);
    }

    int width() const { return width_; }
    int height() const { return height_; }
    int levels() const { return levels_; }

    bool not_occ_left(int x, int y, int t) const { return left_[index(x, y, t)] != 0; }
    bool not_occ_right(int x, int y, int t) const { return right_[index(x, y, t)] != 0; }
    void set(int x, int y, int t, bool left_visible, bool right_visible) {
        const auto i = index(x, y, t);
        left_[i] = left_visible ? 1 : 0;
        right_[i] = right_visible ? 1 : 0;
    }

    /// Fractions of candidates hidden in the left view, the right view, and both.
    struct Stats {
        double occluded_left = 0.0;
        double occluded_right = 0.0;
        double occluded_both = 0.0;
        double occluded_any = 0.0;
    };
    Stats stats() const;

    bool operator==(const OcclusionVolume&) const = default;

private:
    std::size_t index(int x, int y, int t) const {
        return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x)) *
                   static_cast<std::size_t>(levels_) +
               static_cast<std::size_t>(t);
    }

    int width_ = 0;
    int height_ = 0;
    int levels_ = 0;
    std::vector<std::uint8_t> left_;
    std::vector<std::uint8_t> right_;
};

/// num / den rounded to nearest, halves away from zero. den > 0.
int round_div(long long num, long long den);

/// Column reached from x by a displacement of level t toward the given side.
inline int target_column(int x, int t, int precision, Side side_sign) {
    return round_div(static_cast<long long>(x) * precision + static_cast<int>(side_sign) * static_cast<long long>(t),
                     precision);
}

/// Forward-warps a total center map to a side camera. Each pixel lands at
/// x + sign * d / precision (nearest column); colliding writes keep the larger
/// disparity since the nearer surface occludes. Unreached pixels are invalid.
DisparityMap dibr_warp_disparity(const DisparityMap& center, Side side_sign);

SideDisparityPair warp_to_sides(const DisparityMap& center);

/// True when candidate t at (x, y) is probably visible in the side view:
/// false if the target column leaves the frame, true on a hole, otherwise
/// t >= stored side disparity.
bool not_occluded(const DisparityMap& side_map, int x, int y, int t, Side side_sign);

OcclusionVolume build_occlusion_volume(const SideDisparityPair& pair, int levels);

/// One PGM per level and side (255 = visible), named occ_{left,right}_NNN.pgm.
void dump_occlusion_slices(const OcclusionVolume& volume, const std::filesystem::path& dir);

} // namespace tristereo
