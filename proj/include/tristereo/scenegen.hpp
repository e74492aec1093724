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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

namespace tristereo {

/// Fronto-parallel textured rectangle. Bounds are half-open, in center-view
/// coordinates, and may extend past the frame.
struct SceneLayer {
    int x0 = 0;
    int y0 = 0;
    int x1 = 0;
    int y1 = 0;
    int disparity = 0;  ///< pixels
    std::uint64_t texture_seed = 0;
};

/// Layers are listed back to front, so disparities strictly increase along
/// the list. The first layer is the backdrop: it must cover the frame and is
/// rendered as an unbounded plane so side views see texture past the edges.
struct SceneSpec {
    int width = 64;
    int height = 64;
    int d_max = 16;
    std::vector<SceneLayer> layers;
    double noise_sigma = 0.0;  ///< luma units, independent per view
    double gt_scale = 4.0;     ///< sample scale of the ground-truth PGM

    void validate() const;
};

struct SceneViews {
    LumaImage center;
    LumaImage left;   ///< sees a center point at x + d
    LumaImage right;  ///< sees a center point at x - d
    DisparityMap gt_center;  ///< precision 1
    /// Center pixels whose correspondence in that view is hidden by a nearer layer.
    PixelMask occ_left;
    PixelMask occ_right;
};

SceneViews render_scene(const SceneSpec& spec, std::uint64_t seed);

/// Key=value text: width, height, d_max, noise_sigma, gt_scale, and one
/// `layer = x0 y0 x1 y1 disparity texture_seed` line per layer. '#' starts a
/// comment. Throws ConfigError on bad input.
SceneSpec parse_scene_spec(std::istream& in);
SceneSpec load_scene_spec(const std::filesystem::path& path);

/// center.pgm, left.pgm, right.pgm, gt_center.pgm, occ_left.pgm, occ_right.pgm.
void write_scene(const SceneViews& views, double gt_scale, const std::filesystem::path& dir);

/// Two-layer scene: a foreground rectangle of disparity `fg` over a backdrop of
/// disparity `bg`.
SceneSpec two_layer_scene(int width, int height, int bg, int fg, double noise_sigma = 0.0);

} // namespace tristereo
