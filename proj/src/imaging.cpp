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

#include "tristereo/imaging.hpp"

#include "tristereo/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>

namespace tristereo {

namespace {

void check_dimensions(int width, int height) {
    if (width < 0 || height < 0) {
        throw ConfigError("image dimensions must be non-negative");
    }
}

std::size_t pixel_count(int width, int height) {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
}

struct PnmData {
    char kind = '5';
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> payload;
};

// Header tokens are separated by whitespace; '#' starts a comment that runs to end of line.
class HeaderReader {
public:
    HeaderReader(const std::vector<char>& buf, const std::string& name) : buf_(buf), name_(name) {}

    int next_int() {
        skip_space_and_comments();
        if (pos_ >= buf_.size() || !std::isdigit(static_cast<unsigned char>(buf_[pos_]))) {
            throw FormatError(name_ + ": malformed PNM header");
        }
        long value = 0;
        while (pos_ < buf_.size() && std::isdigit(static_cast<unsigned char>(buf_[pos_]))) {
            value = value * 10 + (buf_[pos_] - '0');
            if (value > (1L << 24)) {
                throw FormatError(name_ + ": PNM header value out of range");
            }
            ++pos_;
        }
        return static_cast<int>(value);
    }

    // Exactly one whitespace byte separates maxval from the raster.
    std::size_t payload_offset() {
        if (pos_ >= buf_.size() || !std::isspace(static_cast<unsigned char>(buf_[pos_]))) {
            throw FormatError(name_ + ": missing separator before PNM raster");
        }
        return pos_ + 1;
    }

    void set_pos(std::size_t p) { pos_ = p; }

private:
    void skip_space_and_comments() {
        while (pos_ < buf_.size()) {
            const auto c = static_cast<unsigned char>(buf_[pos_]);
            if (std::isspace(c)) {
                ++pos_;
            } else if (c == '#') {
                while (pos_ < buf_.size() && buf_[pos_] != '\n') {
                    ++pos_;
                }
            } else {
                break;
            }
        }
    }

    const std::vector<char>& buf_;
    std::string name_;
    std::size_t pos_ = 0;
};

PnmData read_pnm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::vector<char> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw IoError("read failure on " + path.string());
    }
    const std::string name = path.string();
    if (buf.size() < 2 || buf[0] != 'P') {
        throw FormatError(name + ": not a PNM file");
    }
    PnmData out;
    out.kind = buf[1];
    if (out.kind != '5' && out.kind != '6') {
        throw UnsupportedError(name + ": only binary P5/P6 are supported");
    }
    HeaderReader header(buf, name);
    header.set_pos(2);
    out.width = header.next_int();
    out.height = header.next_int();
    const int maxval = header.next_int();
    if (out.width <= 0 || out.height <= 0) {
        throw FormatError(name + ": invalid dimensions");
    }
    if (maxval != 255) {
        throw UnsupportedError(name + ": maxval " + std::to_string(maxval) + " is not supported");
    }
    const std::size_t offset = header.payload_offset();
    const std::size_t channels = out.kind == '6' ? 3 : 1;
    const std::size_t need = pixel_count(out.width, out.height) * channels;
    if (buf.size() < offset + need) {
        throw FormatError(name + ": truncated raster");
    }
    out.payload.assign(buf.begin() + static_cast<std::ptrdiff_t>(offset),
                       buf.begin() + static_cast<std::ptrdiff_t>(offset + need));
    return out;
}

std::uint8_t to_byte(double v) {
    return static_cast<std::uint8_t>(std::clamp(std::round(v), 0.0, 255.0));
}

} // namespace

// ---------------------------------------------------------------------------

LumaImage::LumaImage(int width, int height, float fill) : width_(width), height_(height) {
    check_dimensions(width, height);
    if (fill < 0.0f || fill > 255.0f) {
        throw ConfigError("luma sample out of [0, 255]");
    }
    data_.assign(pixel_count(width, height), fill);
}

LumaImage::LumaImage(int width, int height, std::vector<float> samples)
    : width_(width), height_(height), data_(std::move(samples)) {
    check_dimensions(width, height);
    if (data_.size() != pixel_count(width, height)) {
        throw ConfigError("luma sample count does not match dimensions");
    }
    for (float v : data_) {
        if (!(v >= 0.0f && v <= 255.0f)) {
            throw ConfigError("luma sample out of [0, 255]");
        }
    }
}

void LumaImage::set(int x, int y, float value) {
    if (!(value >= 0.0f && value <= 255.0f)) {
        throw ConfigError("luma sample out of [0, 255]");
    }
    data_[index(x, y)] = value;
}

bool is_supported_precision(int precision) {
    return precision == 1 || precision == 2 || precision == 4;
}

DisparityMap::DisparityMap(int width, int height, int precision, std::int32_t fill)
    : width_(width), height_(height), precision_(precision) {
    check_dimensions(width, height);
    if (!is_supported_precision(precision)) {
        throw ConfigError("precision must be 1, 2 or 4");
    }
    if (fill < kInvalidLevel) {
        throw ConfigError("negative disparity level");
    }
    levels_.assign(pixel_count(width, height), fill);
}

DisparityMap::DisparityMap(int width, int height, int precision, std::vector<std::int32_t> levels)
    : width_(width), height_(height), precision_(precision), levels_(std::move(levels)) {
    check_dimensions(width, height);
    if (!is_supported_precision(precision)) {
        throw ConfigError("precision must be 1, 2 or 4");
    }
    if (levels_.size() != pixel_count(width, height)) {
        throw ConfigError("disparity level count does not match dimensions");
    }
    if (std::any_of(levels_.begin(), levels_.end(), [](std::int32_t l) { return l < kInvalidLevel; })) {
        throw ConfigError("negative disparity level");
    }
}

void DisparityMap::set(int x, int y, std::int32_t level) {
    if (level < kInvalidLevel) {
        throw ConfigError("negative disparity level");
    }
    levels_[index(x, y)] = level;
}

bool DisparityMap::is_total() const {
    return std::none_of(levels_.begin(), levels_.end(), [](std::int32_t l) { return l == kInvalidLevel; });
}

std::int32_t DisparityMap::max_level() const {
    std::int32_t best = kInvalidLevel;
    for (auto l : levels_) {
        best = std::max(best, l);
    }
    return best;
}

PixelMask::PixelMask(int width, int height, bool fill) : width_(width), height_(height) {
    check_dimensions(width, height);
    data_.assign(pixel_count(width, height), fill ? 1 : 0);
}

std::size_t PixelMask::count() const {
    return static_cast<std::size_t>(std::count(data_.begin(), data_.end(), std::uint8_t{1}));
}

// ---------------------------------------------------------------------------

GrayRaster read_pgm(const std::filesystem::path& path) {
    PnmData pnm = read_pnm(path);
    if (pnm.kind != '5') {
        throw FormatError(path.string() + ": expected a P5 file");
    }
    return GrayRaster{pnm.width, pnm.height, std::move(pnm.payload)};
}

void write_pgm(const GrayRaster& raster, const std::filesystem::path& path) {
    if (raster.bytes.size() != pixel_count(raster.width, raster.height)) {
        throw ConfigError("raster size does not match dimensions");
    }
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot open " + tmp.string() + " for writing");
        }
        out << "P5\n" << raster.width << ' ' << raster.height << "\n255\n";
        out.write(reinterpret_cast<const char*>(raster.bytes.data()),
                  static_cast<std::streamsize>(raster.bytes.size()));
        if (!out) {
            throw IoError("write failure on " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
    }
}

LumaImage load_image(const std::filesystem::path& path) {
    PnmData pnm = read_pnm(path);
    const std::size_t n = pixel_count(pnm.width, pnm.height);
    std::vector<float> samples(n);
    if (pnm.kind == '5') {
        std::copy(pnm.payload.begin(), pnm.payload.end(), samples.begin());
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            const double r = pnm.payload[3 * i];
            const double g = pnm.payload[3 * i + 1];
            const double b = pnm.payload[3 * i + 2];
            samples[i] = static_cast<float>(to_byte(0.299 * r + 0.587 * g + 0.114 * b));
        }
    }
    return LumaImage(pnm.width, pnm.height, std::move(samples));
}

void save_image(const LumaImage& image, const std::filesystem::path& path) {
    GrayRaster raster{image.width(), image.height(), {}};
    raster.bytes.reserve(image.size());
    for (float v : image.samples()) {
        raster.bytes.push_back(to_byte(v));
    }
    write_pgm(raster, path);
}

void save_disparity(const DisparityMap& map, const std::filesystem::path& path, double scale) {
    if (!(scale > 0.0)) {
        throw ConfigError("disparity scale must be positive");
    }
    GrayRaster raster{map.width(), map.height(), {}};
    raster.bytes.reserve(map.size());
    for (auto level : map.levels()) {
        if (level == DisparityMap::kInvalidLevel) {
            raster.bytes.push_back(0);
        } else {
            raster.bytes.push_back(to_byte(static_cast<double>(level) / map.precision() * scale));
        }
    }
    write_pgm(raster, path);
}

DisparityMap load_ground_truth(const std::filesystem::path& path, double scale, int precision,
                               bool zero_is_unknown) {
    if (!(scale > 0.0)) {
        throw ConfigError("disparity scale must be positive");
    }
    const GrayRaster raster = read_pgm(path);
    DisparityMap map(raster.width, raster.height, precision);
    std::size_t i = 0;
    for (int y = 0; y < raster.height; ++y) {
        for (int x = 0; x < raster.width; ++x, ++i) {
            const std::uint8_t s = raster.bytes[i];
            if (s == 0 && zero_is_unknown) {
                continue;
            }
            map.set(x, y, static_cast<std::int32_t>(std::lround(s / scale * precision)));
        }
    }
    return map;
}

PixelMask load_mask(const std::filesystem::path& path) {
    const GrayRaster raster = read_pgm(path);
    PixelMask mask(raster.width, raster.height);
    std::size_t i = 0;
    for (int y = 0; y < raster.height; ++y) {
        for (int x = 0; x < raster.width; ++x, ++i) {
            mask.set(x, y, raster.bytes[i] == 255);
        }
    }
    return mask;
}

void save_mask(const PixelMask& mask, const std::filesystem::path& path) {
    GrayRaster raster{mask.width(), mask.height(), {}};
    raster.bytes.reserve(pixel_count(mask.width(), mask.height()));
    for (int y = 0; y < mask.height(); ++y) {
        for (int x = 0; x < mask.width(); ++x) {
            raster.bytes.push_back(mask.at(x, y) ? 255 : 0);
        }
    }
    write_pgm(raster, path);
}

} // namespace tristereo
