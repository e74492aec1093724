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

namespace tristereo {

enum class Metric { SAD, SSD };

/// Dissimilarity of fragments with no overlapping samples.
inline constexpr double kLargeCost = 1e9;

struct MatchParams {
    int block_radius = 1;   ///< block is (2r+1)^2
    Metric metric = Metric::SAD;
    int precision = 1;      ///< levels per pixel: 1, 2 or 4
    int d_max = 16;         ///< search range in pixels

    /// Candidate count: levels 0..d_max*precision.
    int levels() const { return d_max * precision + 1; }
    /// Throws ConfigError on out-of-range fields.
    void validate() const;
};

/// Horizontal linear interpolation at a fractional column; requires 0 <= x <= width-1.
double sample_subpixel(const LumaImage& img, double x, int y);

enum class Side : int { Left = +1, Right = -1 };

/// Block dissimilarity between the center fragment at (x, y) and the side
/// fragment displaced by level t (toward +x for the left view, -x for the right).
///
/// Block samples falling outside either image are skipped; the partial sum is
/// rescaled by (2r+1)^2 / count so border costs stay comparable with interior
/// ones. Returns kLargeCost when no sample contributes.
double sim(const LumaImage& center, const LumaImage& side, int x, int y, int t, Side side_sign,
           const MatchParams& p);

} // namespace tristereo
