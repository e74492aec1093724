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

#include "tristereo/similarity.hpp"

#include "tristereo/errors.hpp"

#include <cassert>
#include <cmath>

namespace tristereo {

void MatchParams::validate() const {
    if (block_radius < 0) {
        throw ConfigError("block_radius must be >= 0");
    }
    if (!is_supported_precision(precision)) {
        throw ConfigError("precision must be 1, 2 or 4");
    }
    if (d_max < 1) {
        throw ConfigError("d_max must be >= 1");
    }
}

double sample_subpixel(const LumaImage& img, double x, int y) {
    assert(x >= 0.0 && x <= img.width() - 1 && y >= 0 && y < img.height());
    const double base = std::floor(x);
    const int col = static_cast<int>(base);
    const double frac = x - base;
    if (frac == 0.0) {
        return img.at(col, y);
    }
    return (1.0 - frac) * img.at(col, y) + frac * img.at(col + 1, y);
}

double sim(const LumaImage& center, const LumaImage& side, int x, int y, int t, Side side_sign,
           const MatchParams& p) {
    const int r = p.block_radius;
    const double shift = static_cast<int>(side_sign) * static_cast<double>(t) / p.precision;
    const double last_col = side.width() - 1;
    double sum = 0.0;
    int count = 0;
    for (int dy = -r; dy <= r; ++dy) {
        const int cy = y + dy;
        if (cy < 0 || cy >= center.height() || cy >= side.height()) {
            continue;
        }
        for (int dx = -r; dx <= r; ++dx) {
            const int cx = x + dx;
            if (cx < 0 || cx >= center.width()) {
                continue;
            }
            const double sx = cx + shift;
            if (sx < 0.0 || sx > last_col) {
                continue;
            }
            const double diff = center.at(cx, cy) - sample_subpixel(side, sx, cy);
            sum += p.metric == Metric::SAD ? std::abs(diff) : diff * diff;
            ++count;
        }
    }
    if (count == 0) {
        return kLargeCost;
    }
    const int block = (2 * r + 1) * (2 * r + 1);
    if (count == block) {
        return sum;
    }
    return sum * block / count;
}

} // namespace tristereo
