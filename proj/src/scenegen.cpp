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

#include "tristereo/scenegen.hpp"

#include "tristereo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace tristereo {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

float texture(std::uint64_t seed, std::uint64_t layer_seed, int x, int y) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ layer_seed);
    h = splitmix64(h ^ static_cast<std::uint32_t>(x));
    h = splitmix64(h ^ (static_cast<std::uint64_t>(static_cast<std::uint32_t>(y)) << 32));
    return static_cast<float>(h & 0xFF);
}

bool covers(const SceneLayer& l, int xc, int y) {
    return xc >= l.x0 && xc < l.x1 && y >= l.y0 && y < l.y1;
}

// Front-most layer visible at view column xv; view_sign is 0 for the center,
// +1 for left, -1 for right.
int visible_layer(const SceneSpec& spec, int xv, int y, int view_sign) {
    for (int k = static_cast<int>(spec.layers.size()) - 1; k > 0; --k) {
        const auto& l = spec.layers[static_cast<std::size_t>(k)];
        if (covers(l, xv - view_sign * l.disparity, y)) {
            return k;
        }
    }
    return 0;
}

LumaImage render_view(const SceneSpec& spec, std::uint64_t seed, int view_sign) {
    LumaImage img(spec.width, spec.height);
    for (int y = 0; y < spec.height; ++y) {
        for (int x = 0; x < spec.width; ++x) {
            const auto& l = spec.layers[static_cast<std::size_t>(visible_layer(spec, x, y, view_sign))];
            img.set(x, y, texture(seed, l.texture_seed, x - view_sign * l.disparity, y));
        }
    }
    return img;
}

void add_noise(LumaImage& img, double sigma, std::mt19937_64& rng) {
    if (sigma <= 0.0) {
        return;
    }
    std::normal_distribution<double> noise(0.0, sigma);
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            const double v = std::round(img.at(x, y) + noise(rng));
            img.set(x, y, static_cast<float>(std::clamp(v, 0.0, 255.0)));
        }
    }
}

} // namespace

void SceneSpec::validate() const {
    if (width < 1 || height < 1) {
        throw ConfigError("scene dimensions must be positive");
    }
    if (d_max < 1) {
        throw ConfigError("scene d_max must be >= 1");
    }
    if (layers.empty()) {
        throw ConfigError("scene needs at least one layer");
    }
    const auto& back = layers.front();
    if (back.x0 > 0 || back.y0 > 0 || back.x1 < width || back.y1 < height) {
        throw ConfigError("first layer must cover the whole frame");
    }
    for (std::size_t k = 0; k < layers.size(); ++k) {
        const auto& l = layers[k];
        if (l.x1 <= l.x0 || l.y1 <= l.y0) {
            throw ConfigError("layer " + std::to_string(k) + " has an empty rectangle");
        }
        if (l.disparity < 0 || l.disparity > d_max) {
            throw ConfigError("layer " + std::to_string(k) + " disparity outside [0, d_max]");
        }
        if (k > 0 && l.disparity <= layers[k - 1].disparity) {
            throw ConfigError("layer disparities must strictly increase from back to front");
        }
    }
    if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
        throw ConfigError("noise_sigma must be finite and non-negative");
    }
    if (!(gt_scale > 0.0) || d_max * gt_scale > 255.0) {
        throw ConfigError("gt_scale must be positive with d_max * gt_scale <= 255");
    }
}

SceneViews render_scene(const SceneSpec& spec, std::uint64_t seed) {
    spec.validate();
    SceneViews v;
    v.center = render_view(spec, seed, 0);
    v.left = render_view(spec, seed, +1);
    v.right = render_view(spec, seed, -1);

    v.gt_center = DisparityMap(spec.width, spec.height, 1);
    v.occ_left = PixelMask(spec.width, spec.height);
    v.occ_right = PixelMask(spec.width, spec.height);
    for (int y = 0; y < spec.height; ++y) {
        for (int x = 0; x < spec.width; ++x) {
            const int k = visible_layer(spec, x, y, 0);
            const int d = spec.layers[static_cast<std::size_t>(k)].disparity;
            v.gt_center.set(x, y, d);
            // Hidden when a nearer layer covers the displaced point inside the side frame.
            for (std::size_t j = static_cast<std::size_t>(k) + 1; j < spec.layers.size(); ++j) {
                const auto& n = spec.layers[j];
                if (x + d < spec.width && covers(n, x + d - n.disparity, y)) {
                    v.occ_left.set(x, y, true);
                }
                if (x - d >= 0 && covers(n, x - d + n.disparity, y)) {
                    v.occ_right.set(x, y, true);
                }
            }
        }
    }

    std::mt19937_64 rng(splitmix64(seed ^ 0x6e6f697365ULL));
    add_noise(v.center, spec.noise_sigma, rng);
    add_noise(v.left, spec.noise_sigma, rng);
    add_noise(v.right, spec.noise_sigma, rng);
    return v;
}

SceneSpec parse_scene_spec(std::istream& in) {
    SceneSpec spec;
    spec.layers.clear();
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        const auto eq = line.find('=');
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        if (eq == std::string::npos) {
            throw ConfigError("scene spec line " + std::to_string(lineno) + ": expected key = value");
        }
        std::istringstream key_stream(line.substr(0, eq));
        std::string key;
        key_stream >> key;
        std::istringstream value(line.substr(eq + 1));
        bool ok = true;
        if (key == "width") {
            ok = static_cast<bool>(value >> spec.width);
        } else if (key == "height") {
            ok = static_cast<bool>(value >> spec.height);
        } else if (key == "d_max") {
            ok = static_cast<bool>(value >> spec.d_max);
        } else if (key == "noise_sigma") {
            ok = static_cast<bool>(value >> spec.noise_sigma);
        } else if (key == "gt_scale") {
            ok = static_cast<bool>(value >> spec.gt_scale);
        } else if (key == "layer") {
            SceneLayer l;
            ok = static_cast<bool>(value >> l.x0 >> l.y0 >> l.x1 >> l.y1 >> l.disparity >> l.texture_seed);
            spec.layers.push_back(l);
        } else {
            throw ConfigError("scene spec line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
        std::string rest;
        if (!ok || (value >> rest)) {
            throw ConfigError("scene spec line " + std::to_string(lineno) + ": bad value for '" + key + "'");
        }
    }
    spec.validate();
    return spec;
}

SceneSpec load_scene_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open scene spec " + path.string());
    }
    return parse_scene_spec(in);
}

void write_scene(const SceneViews& views, double gt_scale, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    save_image(views.center, dir / "center.pgm");
    save_image(views.left, dir / "left.pgm");
    save_image(views.right, dir / "right.pgm");
    save_disparity(views.gt_center, dir / "gt_center.pgm", gt_scale);
    save_mask(views.occ_left, dir / "occ_left.pgm");
    save_mask(views.occ_right, dir / "occ_right.pgm");
}

SceneSpec two_layer_scene(int width, int height, int bg, int fg, double noise_sigma) {
    SceneSpec spec;
    spec.width = width;
    spec.height = height;
    spec.d_max = std::max(16, fg);
    spec.noise_sigma = noise_sigma;
    spec.gt_scale = std::floor(255.0 / spec.d_max);
    spec.layers.push_back(SceneLayer{0, 0, width, height, bg, 1});
    spec.layers.push_back(SceneLayer{width / 4, height / 4, (3 * width) / 4, (3 * height) / 4, fg, 2});
    return spec;
}

} // namespace tristereo
