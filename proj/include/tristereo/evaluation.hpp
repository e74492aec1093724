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

#include <limits>
#include <vector>

namespace tristereo {

struct EvalMasks {
    PixelMask nonocc;
    PixelMask all;
    PixelMask disc;
};

/// Percentages of bad pixels per region, over pixels with valid ground truth.
struct BadPixelReport {
    double nonocc = 0.0;
    double all = 0.0;
    double disc = 0.0;
    double threshold = 1.0;  ///< pixels
};

/// Percentage of valid-ground-truth pixels inside `mask` whose estimate
/// differs by more than `threshold` pixels. Estimates and ground truth may use
/// different precisions; the comparison is in pixel units. An invalid estimate
/// counts as bad. Empty regions report 0.
double bad_pixel_rate(const DisparityMap& est, const DisparityMap& gt, const PixelMask& mask,
                      double threshold = 1.0);

BadPixelReport bad_pixel_rates(const DisparityMap& est, const DisparityMap& gt, const EvalMasks& masks,
                               double threshold = 1.0);

/// Pixels within `radius` (Chebyshev) of a ground-truth jump larger than
/// `jump` pixels between 4-neighbours.
PixelMask discontinuity_mask(const DisparityMap& gt, double jump = 1.0, int radius = 2);

/// Multiply every valid level by `ratio` (rounded), e.g. 2 when the
/// disparities were estimated over half the A-B baseline.
DisparityMap scale_disparity(const DisparityMap& map, double ratio);

/// Renders a virtual view between A (left) and B (right) at fraction `alpha`
/// of the A-B baseline. dA/dB are full-baseline disparities of A and B.
///
/// A pixels move by -alpha * dA, B pixels by +(1 - alpha) * dB, rounded to the
/// nearest column, z-buffered on the larger disparity. Pixels reached from both
/// views are blended (1 - alpha) * A + alpha * B. Remaining holes copy the
/// nearest valid pixel of the row on the side with the smaller disparity.
LumaImage synthesize_view(const LumaImage& view_a, const DisparityMap& disp_a, const LumaImage& view_b,
                          const DisparityMap& disp_b, double alpha);

/// Returned for identical images.
inline constexpr double kInfinitePsnr = std::numeric_limits<double>::infinity();

/// 10 log10(255^2 / MSE) over all pixels.
double psnr_luma(const LumaImage& test, const LumaImage& ref);

struct PsnrReport {
    double psnr_luma = 0.0;  ///< mean of per-frame values
    int frames = 0;
    std::vector<double> per_frame;
};

PsnrReport summarize_psnr(std::vector<double> per_frame);

} // namespace tristereo
