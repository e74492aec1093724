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

#include "tristereo/occlusion.hpp"

#include "tristereo/errors.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cstdio>

namespace tristereo {

OcclusionVolume::OcclusionVolume(int width, int height, int levels, bool fill)
    : width_(width), height_(height), levels_(levels) {
    if (width < 0 || height < 0 || levels < 1) {
        throw ConfigError("invalid occlusion volume shape");
    }
    const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height) *
                          static_cast<std::size_t>(levels);
    left_.assign(n, fill ? 1 : 0);
    right_.assign(n, fill ? 1 : 0);
}

OcclusionVolume::Stats OcclusionVolume::stats() const {
    Stats s;
    if (left_.empty()) {
        return s;
    }
    std::size_t l = 0, r = 0, both = 0, any = 0;
    for (std::size_t i = 0; i < left_.size(); ++i) {
        const bool hl = left_[i] == 0;
        const bool hr = right_[i] == 0;
        l += hl;
        r += hr;
        both += hl && hr;
        any += hl || hr;
    }
    const double n = static_cast<double>(left_.size());
    s.occluded_left = l / n;
    s.occluded_right = r / n;
    s.occluded_both = both / n;
    s.occluded_any = any / n;
    return s;
}

int round_div(long long num, long long den) {
    const long long q = (2 * (num < 0 ? -num : num) + den) / (2 * den);
    return static_cast<int>(num < 0 ? -q : q);
}

DisparityMap dibr_warp_disparity(const DisparityMap& center, Side side_sign) {
    if (!center.is_total()) {
        throw ConfigError("warp source must be defined at every pixel");
    }
    const int w = center.width();
    DisparityMap out(w, center.height(), center.precision());
    for (int y = 0; y < center.height(); ++y) {
        for (int x = 0; x < w; ++x) {
            const std::int32_t d = center.level(x, y);
            const int c = target_column(x, d, center.precision(), side_sign);
            if (c < 0 || c >= w) {
                continue;
            }
            if (out.level(c, y) < d) {
                out.set(c, y, d);
            }
        }
    }
    return out;
}

SideDisparityPair warp_to_sides(const DisparityMap& center) {
    return {dibr_warp_disparity(center, Side::Left), dibr_warp_disparity(center, Side::Right)};
}

bool not_occluded(const DisparityMap& side_map, int x, int y, int t, Side side_sign) {
    const int c = target_column(x, t, side_map.precision(), side_sign);
    if (c < 0 || c >= side_map.width()) {
        return false;
    }
    if (!side_map.is_valid(c, y)) {
        return true;
    }
    return t >= side_map.level(c, y);
}

OcclusionVolume build_occlusion_volume(const SideDisparityPair& pair, int levels) {
    if (!pair.left.same_shape(pair.right) || pair.left.precision() != pair.right.precision()) {
        throw ConfigError("side maps differ in shape or precision");
    }
    const int w = pair.left.width();
    OcclusionVolume vol(w, pair.left.height(), levels, false);
    detail::parallel_rows(pair.left.height(), [&](int y) {
        for (int x = 0; x < w; ++x) {
            for (int t = 0; t < levels; ++t) {
                vol.set(x, y, t, not_occluded(pair.left, x, y, t, Side::Left),
                        not_occluded(pair.right, x, y, t, Side::Right));
            }
        }
    });
    return vol;
}

void dump_occlusion_slices(const OcclusionVolume& volume, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const std::size_t n = static_cast<std::size_t>(volume.width()) * static_cast<std::size_t>(volume.height());
    for (int t = 0; t < volume.levels(); ++t) {
        GrayRaster left{volume.width(), volume.height(), std::vector<std::uint8_t>(n)};
        GrayRaster right = left;
        std::size_t i = 0;
        for (int y = 0; y < volume.height(); ++y) {
            for (int x = 0; x < volume.width(); ++x, ++i) {
                left.bytes[i] = volume.not_occ_left(x, y, t) ? 255 : 0;
                right.bytes[i] = volume.not_occ_right(x, y, t) ? 255 : 0;
            }
        }
        char name[64];
        std::snprintf(name, sizeof(name), "occ_left_%03d.pgm", t);
        write_pgm(left, dir / name);
        std::snprintf(name, sizeof(name), "occ_right_%03d.pgm", t);
        write_pgm(right, dir / name);
    }
}

} // namespace tristereo
