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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace tristereo {

/// Row-major grayscale plane with samples in [0, 255].
class LumaImage {
public:
    LumaImage() = default;
    LumaImage(int width, int height, float fill = 0.0f);
    /// Throws ConfigError when the sample count or range is wrong.
    LumaImage(int width, int height, std::vector<float> samples);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    float at(int x, int y) const { return data_[index(x, y)]; }
    void set(int x, int y, float value);
    std::span<const float> samples() const { return data_; }

    bool same_shape(const LumaImage& other) const {
        return width_ == other.width_ && height_ == other.height_;
    }
    bool operator==(const LumaImage&) const = default;

private:
    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<float> data_;
};

/// Levels per pixel. Level t means a displacement of t / precision pixels.
bool is_supported_precision(int precision);

/// Per-pixel disparity in integer levels. Unknown pixels hold kInvalidLevel.
class DisparityMap {
public:
    static constexpr std::int32_t kInvalidLevel = -1;

    DisparityMap() = default;
    DisparityMap(int width, int height, int precision, std::int32_t fill = kInvalidLevel);
    DisparityMap(int width, int height, int precision, std::vector<std::int32_t> levels);

    int width() const { return width_; }
    int height() const { return height_; }
    int precision() const { return precision_; }
    std::size_t size() const { return levels_.size(); }

    std::int32_t level(int x, int y) const { return levels_[index(x, y)]; }
    bool is_valid(int x, int y) const { return level(x, y) != kInvalidLevel; }
    /// Disparity in pixels; meaningless for invalid pixels.
    double pixels(int x, int y) const { return static_cast<double>(level(x, y)) / precision_; }

    /// Level must be >= 0 or kInvalidLevel.
    void set(int x, int y, std::int32_t level);
    void invalidate(int x, int y) { levels_[index(x, y)] = kInvalidLevel; }

    std::span<const std::int32_t> levels() const { return levels_; }
    bool is_total() const;
    std::int32_t max_level() const;

    bool same_shape(const DisparityMap& other) const {
        return width_ == other.width_ && height_ == other.height_;
    }
    bool operator==(const DisparityMap&) const = default;

private:
    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
    }

    int width_ = 0;
    int height_ = 0;
    int precision_ = 1;
    std::vector<std::int32_t> levels_;
};

class PixelMask {
public:
    PixelMask() = default;
    PixelMask(int width, int height, bool fill = false);

    int width() const { return width_; }
    int height() const { return height_; }
    bool at(int x, int y) const { return data_[index(x, y)] != 0; }
    void set(int x, int y, bool value) { data_[index(x, y)] = value ? 1 : 0; }
    std::size_t count() const;

    bool same_shape(const PixelMask& other) const {
        return width_ == other.width_ && height_ == other.height_;
    }
    bool operator==(const PixelMask&) const = default;

private:
    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> data_;
};

/// Reads binary P5 or P6 with maxval 255. Color is collapsed to BT.601 luma,
/// rounded to the nearest integer.
LumaImage load_image(const std::filesystem::path& path);
/// Writes P5; samples are rounded and clamped to [0, 255].
void save_image(const LumaImage& image, const std::filesystem::path& path);

/// Writes P5 with sample = round(level / precision * scale) clamped to [0, 255].
/// Invalid pixels are written as 0.
void save_disparity(const DisparityMap& map, const std::filesystem::path& path, double scale);

/// Inverse of save_disparity: level = round(sample / scale * precision).
/// With zero_is_unknown, sample 0 yields an invalid pixel.
DisparityMap load_ground_truth(const std::filesystem::path& path, double scale, int precision,
                               bool zero_is_unknown = false);

/// Only 255 samples are true; Middlebury masks mark "evaluated elsewhere" with 128.
PixelMask load_mask(const std::filesystem::path& path);
void save_mask(const PixelMask& mask, const std::filesystem::path& path);

/// Raw 8-bit PGM helpers shared by the loaders above.
struct GrayRaster {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> bytes;
};
GrayRaster read_pgm(const std::filesystem::path& path);
/// Written to a sibling temporary and renamed into place.
void write_pgm(const GrayRaster& raster, const std::filesystem::path& path);

} // namespace tristereo
