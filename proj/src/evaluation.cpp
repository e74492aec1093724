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

#include "tristereo/evaluation.hpp"

#include "tristereo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tristereo {

double bad_pixel_rate(const DisparityMap& est, const DisparityMap& gt, const PixelMask& mask, double threshold) {
    if (!est.same_shape(gt) || gt.width() != mask.width() || gt.height() != mask.height()) {
        throw ConfigError("estimate, ground truth and mask must have identical dimensions");
    }
    std::size_t valid = 0;
    std::size_t bad = 0;
    for (int y = 0; y < gt.height(); ++y) {
        for (int x = 0; x < gt.width(); ++x) {
            if (!mask.at(x, y) || !gt.is_valid(x, y)) {
                continue;
            }
            ++valid;
            if (!est.is_valid(x, y) || std::abs(est.pixels(x, y) - gt.pixels(x, y)) > threshold) {
                ++bad;
            }
        }
    }
    return valid == 0 ? 0.0 : 100.0 * static_cast<double>(bad) / static_cast<double>(valid);
}

BadPixelReport bad_pixel_rates(const DisparityMap& est, const DisparityMap& gt, const EvalMasks& masks,
                               double threshold) {
    return BadPixelReport{bad_pixel_rate(est, gt, masks.nonocc, threshold),
                          bad_pixel_rate(est, gt, masks.all, threshold),
                          bad_pixel_rate(est, gt, masks.disc, threshold), threshold};
}

PixelMask discontinuity_mask(const DisparityMap& gt, double jump, int radius) {
    const int w = gt.width();
    const int h = gt.height();
    PixelMask edges(w, h);
    auto differs = [&](int x0, int y0, int x1, int y1) {
        return gt.is_valid(x0, y0) && gt.is_valid(x1, y1) && std::abs(gt.pixels(x0, y0) - gt.pixels(x1, y1)) > jump;
    };
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if ((x + 1 < w && differs(x, y, x + 1, y)) || (y + 1 < h && differs(x, y, x, y + 1))) {
                edges.set(x, y, true);
                if (x + 1 < w && differs(x, y, x + 1, y)) {
                    edges.set(x + 1, y, true);
                }
                if (y + 1 < h && differs(x, y, x, y + 1)) {
                    edges.set(x, y + 1, true);
                }
            }
        }
    }
    PixelMask out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!edges.at(x, y)) {
                continue;
            }
            for (int yy = std::max(0, y - radius); yy <= std::min(h - 1, y + radius); ++yy) {
                for (int xx = std::max(0, x - radius); xx <= std::min(w - 1, x + radius); ++xx) {
                    out.set(xx, yy, true);
                }
            }
        }
    }
    return out;
}

DisparityMap scale_disparity(const DisparityMap& map, double ratio) {
    if (!(ratio > 0.0)) {
        throw ConfigError("baseline ratio must be positive");
    }
    DisparityMap out(map.width(), map.height(), map.precision());
    for (int y = 0; y < map.height(); ++y) {
        for (int x = 0; x < map.width(); ++x) {
            if (map.is_valid(x, y)) {
                out.set(x, y, static_cast<std::int32_t>(std::lround(map.level(x, y) * ratio)));
            }
        }
    }
    return out;
}

namespace {

struct WarpedView {
    std::vector<float> value;
    std::vector<double> disparity;  // pixels; negative marks a hole
};

WarpedView forward_warp(const LumaImage& view, const DisparityMap& disp, double factor) {
    const int w = view.width();
    const std::size_t n = view.size();
    WarpedView out{std::vector<float>(n, 0.0f), std::vector<double>(n, -1.0)};
    for (int y = 0; y < view.height(); ++y) {
        for (int x = 0; x < w; ++x) {
            if (!disp.is_valid(x, y)) {
                continue;
            }
            const double d = disp.pixels(x, y);
            const long col = std::lround(x + factor * d);
            if (col < 0 || col >= w) {
                continue;
            }
            const std::size_t i = static_cast<std::size_t>(y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(col);
            if (d > out.disparity[i]) {
                out.disparity[i] = d;
                out.value[i] = view.at(x, y);
            }
        }
    }
    return out;
}

} // namespace

LumaImage synthesize_view(const LumaImage& view_a, const DisparityMap& disp_a, const LumaImage& view_b,
                          const DisparityMap& disp_b, double alpha) {
    if (!view_a.same_shape(view_b) || view_a.width() != disp_a.width() || view_a.height() != disp_a.height() ||
        view_b.width() != disp_b.width() || view_b.height() != disp_b.height()) {
        throw ConfigError("views and disparity maps must have identical dimensions");
    }
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw ConfigError("view position must lie in [0, 1]");
    }
    const int w = view_a.width();
    const int h = view_a.height();
    const WarpedView a = forward_warp(view_a, disp_a, -alpha);
    const WarpedView b = forward_warp(view_b, disp_b, 1.0 - alpha);

    std::vector<float> value(view_a.size(), 0.0f);
    std::vector<double> depth(view_a.size(), -1.0);
    for (std::size_t i = 0; i < value.size(); ++i) {
        const bool has_a = a.disparity[i] >= 0.0;
        const bool has_b = b.disparity[i] >= 0.0;
        if (has_a && has_b) {
            value[i] = static_cast<float>((1.0 - alpha) * a.value[i] + alpha * b.value[i]);
            depth[i] = std::max(a.disparity[i], b.disparity[i]);
        } else if (has_a) {
            value[i] = a.value[i];
            depth[i] = a.disparity[i];
        } else if (has_b) {
            value[i] = b.value[i];
            depth[i] = b.disparity[i];
        }
    }

    // Holes are disocclusions: fill from the background side.
    LumaImage out(w, h);
    for (int y = 0; y < h; ++y) {
        const std::size_t row = static_cast<std::size_t>(y) * static_cast<std::size_t>(w);
        for (int x = 0; x < w; ++x) {
            const std::size_t i = row + static_cast<std::size_t>(x);
            if (depth[i] >= 0.0) {
                out.set(x, y, value[i]);
                continue;
            }
            int l = x - 1;
            while (l >= 0 && depth[row + static_cast<std::size_t>(l)] < 0.0) {
                --l;
            }
            int r = x + 1;
            while (r < w && depth[row + static_cast<std::size_t>(r)] < 0.0) {
                ++r;
            }
            const bool has_l = l >= 0;
            const bool has_r = r < w;
            int src = -1;
            if (has_l && has_r) {
                src = depth[row + static_cast<std::size_t>(r)] < depth[row + static_cast<std::size_t>(l)] ? r : l;
            } else if (has_l) {
                src = l;
            } else if (has_r) {
                src = r;
            }
            out.set(x, y, src < 0 ? 0.0f : value[row + static_cast<std::size_t>(src)]);
        }
    }
    return out;
}

double psnr_luma(const LumaImage& test, const LumaImage& ref) {
    if (!test.same_shape(ref)) {
        throw ConfigError("PSNR images must have identical dimensions");
    }
    if (test.size() == 0) {
        return kInfinitePsnr;
    }
    double sse = 0.0;
    const auto a = test.samples();
    const auto b = ref.samples();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
        sse += d * d;
    }
    if (sse == 0.0) {
        return kInfinitePsnr;
    }
    const double mse = sse / static_cast<double>(a.size());
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

PsnrReport summarize_psnr(std::vector<double> per_frame) {
    PsnrReport r;
    r.frames = static_cast<int>(per_frame.size());
    if (!per_frame.empty()) {
        r.psnr_luma = std::accumulate(per_frame.begin(), per_frame.end(), 0.0) / static_cast<double>(per_frame.size());
    }
    r.per_frame = std::move(per_frame);
    return r;
}

} // namespace tristereo
