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

#include "tristereo/cost_volume.hpp"

#include "tristereo/errors.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

namespace tristereo {

CostVolume::CostVolume(int width, int height, int levels, double fill)
    : width_(width), height_(height), levels_(levels) {
    if (width < 0 || height < 0 || levels < 1) {
        throw ConfigError("invalid cost volume shape");
    }
    data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * static_cast<std::size_t>(levels),
                 fill);
}

std::string_view to_string(CostModel model) {
    switch (model) {
    case CostModel::Sum:
        return "sum";
    case CostModel::Min:
        return "min";
    case CostModel::OccAware:
        return "occ_aware";
    }
    return "?";
}

CostModel parse_cost_model(std::string_view text) {
    std::string s(text);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "sum") {
        return CostModel::Sum;
    }
    if (s == "min") {
        return CostModel::Min;
    }
    if (s == "occ_aware" || s == "occ" || s == "occaware") {
        return CostModel::OccAware;
    }
    throw ConfigError("unknown cost model '" + std::string(text) + "'");
}

void CostMode::validate() const {
    if (model == CostModel::OccAware && !(std::isfinite(occlusion_penalty) && occlusion_penalty > 0.0)) {
        throw ConfigError("occlusion penalty must be finite and positive");
    }
}

double combine_cost(double sim_left, double sim_right, bool visible_left, bool visible_right, const CostMode& mode) {
    switch (mode.model) {
    case CostModel::Sum:
        return sim_left + sim_right;
    case CostModel::Min:
        return std::min(sim_left, sim_right);
    case CostModel::OccAware: {
        const int n = int{visible_left} + int{visible_right};
        if (n == 0) {
            return mode.occlusion_penalty;
        }
        if (n == 2) {
            return (sim_left + sim_right) / 2.0;
        }
        return visible_left ? sim_left : sim_right;
    }
    }
    return 0.0;
}

double cost_at(const LumaImage& center, const LumaImage& left, const LumaImage& right, int x, int y, int t,
               const CostMode& mode, const OcclusionVolume& occ, const MatchParams& p) {
    const double sl = sim(center, left, x, y, t, Side::Left, p);
    const double sr = sim(center, right, x, y, t, Side::Right, p);
    if (mode.model != CostModel::OccAware) {
        return combine_cost(sl, sr, true, true, mode);
    }
    return combine_cost(sl, sr, occ.not_occ_left(x, y, t), occ.not_occ_right(x, y, t), mode);
}

namespace {

void check_images(const LumaImage& center, const LumaImage& left, const LumaImage& right) {
    if (!center.same_shape(left) || !center.same_shape(right)) {
        throw ConfigError("center, left and right images must have identical dimensions");
    }
}

} // namespace

SimilarityVolumes compute_similarity(const LumaImage& center, const LumaImage& left, const LumaImage& right,
                                     const MatchParams& p) {
    check_images(center, left, right);
    p.validate();
    const int w = center.width();
    const int levels = p.levels();
    SimilarityVolumes out{CostVolume(w, center.height(), levels), CostVolume(w, center.height(), levels)};
    detail::parallel_rows(center.height(), [&](int y) {
        for (int x = 0; x < w; ++x) {
            for (int t = 0; t < levels; ++t) {
                out.left.set(x, y, t, sim(center, left, x, y, t, Side::Left, p));
                out.right.set(x, y, t, sim(center, right, x, y, t, Side::Right, p));
            }
        }
    });
    return out;
}

CostVolume combine_costs(const SimilarityVolumes& sims, const CostMode& mode, const OcclusionVolume& occ) {
    mode.validate();
    const int w = sims.left.width();
    const int h = sims.left.height();
    const int levels = sims.left.levels();
    const bool use_occ = mode.model == CostModel::OccAware;
    if (use_occ && (occ.width() != w || occ.height() != h || occ.levels() != levels)) {
        throw ConfigError("occlusion volume shape does not match the cost volume");
    }
    CostVolume vol(w, h, levels);
    detail::parallel_rows(h, [&](int y) {
        for (int x = 0; x < w; ++x) {
            for (int t = 0; t < levels; ++t) {
                const bool vl = !use_occ || occ.not_occ_left(x, y, t);
                const bool vr = !use_occ || occ.not_occ_right(x, y, t);
                vol.set(x, y, t, combine_cost(sims.left.at(x, y, t), sims.right.at(x, y, t), vl, vr, mode));
            }
        }
    });
    return vol;
}

CostVolume build_cost_volume(const LumaImage& center, const LumaImage& left, const LumaImage& right,
                             const CostMode& mode, const OcclusionVolume& occ, const MatchParams& p) {
    return combine_costs(compute_similarity(center, left, right, p), mode, occ);
}

double default_occlusion_penalty(const SimilarityVolumes& sims) {
    const auto l = sims.left.data();
    const auto r = sims.right.data();
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < l.size(); ++i) {
        const double m = std::min(l[i], r[i]);
        if (m < kLargeCost) {
            sum += m;
            ++n;
        }
    }
    const double mean = n > 0 ? sum / static_cast<double>(n) : 0.0;
    // A textureless or perfectly matching input has zero mean; keep the penalty positive.
    return mean > 0.0 ? 2.0 * mean : 1.0;
}

void dump_cost_slices(const CostVolume& volume, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (double v : volume.data()) {
        if (v < kLargeCost) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    const double range = hi > lo ? hi - lo : 1.0;
    const std::size_t n = static_cast<std::size_t>(volume.width()) * static_cast<std::size_t>(volume.height());
    for (int t = 0; t < volume.levels(); ++t) {
        GrayRaster slice{volume.width(), volume.height(), std::vector<std::uint8_t>(n)};
        std::size_t i = 0;
        for (int y = 0; y < volume.height(); ++y) {
            for (int x = 0; x < volume.width(); ++x, ++i) {
                const double v = volume.at(x, y, t);
                const double s = v >= kLargeCost ? 255.0 : std::round((v - lo) / range * 255.0);
                slice.bytes[i] = static_cast<std::uint8_t>(std::clamp(s, 0.0, 255.0));
            }
        }
        char name[32];
        std::snprintf(name, sizeof(name), "cost_%03d.pgm", t);
        write_pgm(slice, dir / name);
    }
}

} // namespace tristereo
