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

#include "manifest.hpp"

#include "tristereo/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace tristereo::app {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

double to_double(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    double out = 0.0;
    try {
        out = std::stod(v, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != v.size() || !std::isfinite(out)) {
        throw ConfigError("'" + key + "' expects a number, got '" + v + "'");
    }
    return out;
}

int to_int(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    int out = 0;
    try {
        out = std::stoi(v, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != v.size()) {
        throw ConfigError("'" + key + "' expects an integer, got '" + v + "'");
    }
    return out;
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") {
        return true;
    }
    if (v == "false" || v == "0" || v == "no" || v == "off") {
        return false;
    }
    throw ConfigError("'" + key + "' expects true/false, got '" + v + "'");
}

// Frame patterns go through snprintf, so only one %[0]<width>d and %% escapes are allowed.
void check_frame_pattern(const std::string& v) {
    int conversions = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] != '%') {
            continue;
        }
        if (i + 1 < v.size() && v[i + 1] == '%') {
            ++i;
            continue;
        }
        std::size_t j = i + 1;
        while (j < v.size() && std::isdigit(static_cast<unsigned char>(v[j]))) {
            ++j;
        }
        if (j >= v.size() || v[j] != 'd' || j - i > 4) {
            throw ConfigError("path '" + v + "': only %d-style frame numbers are allowed");
        }
        ++conversions;
        i = j;
    }
    if (conversions > 1) {
        throw ConfigError("path '" + v + "' holds more than one frame number");
    }
}

// Typed reader over one section that resolves paths against the manifest directory.
class Section {
public:
    Section(KeyValueFile& kv, std::string name, std::filesystem::path base)
        : kv_(kv), name_(std::move(name)), base_(std::move(base)) {}

    std::optional<std::string> str(const std::string& key) { return kv_.take(name_, key); }
    std::string required(const std::string& key) {
        auto v = str(key);
        if (!v) {
            throw ConfigError("missing [" + name_ + "] " + key);
        }
        return *v;
    }
    void number(const std::string& key, double& out) {
        if (auto v = str(key)) {
            out = to_double(key, *v);
        }
    }
    void integer(const std::string& key, int& out) {
        if (auto v = str(key)) {
            out = to_int(key, *v);
        }
    }
    void boolean(const std::string& key, bool& out) {
        if (auto v = str(key)) {
            out = to_bool(key, *v);
        }
    }
    FramePath path(const std::string& key) { return resolve(required(key)); }
    std::optional<FramePath> optional_path(const std::string& key) {
        if (auto v = str(key)) {
            return resolve(*v);
        }
        return std::nullopt;
    }
    FramePath resolve(const std::string& v) const {
        check_frame_pattern(v);
        std::filesystem::path p(v);
        return FramePath{p.is_absolute() ? p : base_ / p};
    }

private:
    KeyValueFile& kv_;
    std::string name_;
    std::filesystem::path base_;
};

ViewTriple read_triple(Section& s, const std::string& prefix) {
    return ViewTriple{s.path(prefix + "center"), s.path(prefix + "left"), s.path(prefix + "right")};
}

} // namespace

KeyValueFile KeyValueFile::parse(std::istream& in) {
    KeyValueFile kv;
    std::string section;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError("line " + std::to_string(lineno) + ": unterminated section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            kv.sections_[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) {
            throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        }
        auto& entries = kv.sections_[section];
        if (entries.count(key)) {
            throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        }
        entries[key] = Entry{trim(line.substr(eq + 1)), lineno, false};
    }
    return kv;
}

bool KeyValueFile::has(const std::string& section, const std::string& key) const {
    auto s = sections_.find(section);
    return s != sections_.end() && s->second.count(key) != 0;
}

std::optional<std::string> KeyValueFile::get(const std::string& section, const std::string& key) const {
    auto s = sections_.find(section);
    if (s == sections_.end()) {
        return std::nullopt;
    }
    auto e = s->second.find(key);
    if (e == s->second.end()) {
        return std::nullopt;
    }
    return e->second.value;
}

std::optional<std::string> KeyValueFile::take(const std::string& section, const std::string& key) {
    auto s = sections_.find(section);
    if (s == sections_.end()) {
        return std::nullopt;
    }
    auto e = s->second.find(key);
    if (e == s->second.end()) {
        return std::nullopt;
    }
    e->second.used = true;
    return e->second.value;
}

void KeyValueFile::reject_unused() const {
    for (const auto& [name, entries] : sections_) {
        for (const auto& [key, entry] : entries) {
            if (!entry.used) {
                throw ConfigError("line " + std::to_string(entry.line) + ": unknown key '" + key + "' in [" + name +
                                  "]");
            }
        }
    }
}

std::filesystem::path FramePath::at(int frame) const {
    const std::string s = pattern.string();
    if (s.find('%') == std::string::npos) {
        return pattern;
    }
    const int n = std::snprintf(nullptr, 0, s.c_str(), frame);
    std::string out(static_cast<std::size_t>(std::max(n, 0)), '\0');
    std::snprintf(out.data(), out.size() + 1, s.c_str(), frame);
    return out;
}

double RunManifest::output_scale() const {
    if (disparity_scale > 0.0) {
        return disparity_scale;
    }
    return std::max(1.0, std::floor(255.0 / pipeline.match.d_max));
}

std::vector<int> RunManifest::frame_numbers() const {
    std::vector<int> out;
    for (int i = 0; i < frames; ++i) {
        out.push_back(first_frame + i);
    }
    return out;
}

RunManifest parse_manifest(std::istream& in, const std::filesystem::path& base_dir) {
    KeyValueFile kv = KeyValueFile::parse(in);
    RunManifest m;
    m.base_dir = base_dir;

    Section top(kv, "", base_dir);
    if (auto v = top.str("name")) {
        m.name = *v;
    }

    if (kv.has_section("input")) {
        Section s(kv, "input", base_dir);
        m.input = read_triple(s, "");
        s.integer("first_frame", m.first_frame);
        s.integer("frames", m.frames);
        if (m.frames < 1) {
            throw ConfigError("[input] frames must be >= 1");
        }
    }

    {
        Section s(kv, "pipeline", base_dir);
        auto& cfg = m.pipeline;
        if (auto v = s.str("mode")) {
            cfg.model = parse_cost_model(*v);
        }
        if (auto v = s.str("optimizer")) {
            cfg.optimizer = parse_optimizer(*v);
        }
        if (auto v = s.str("metric")) {
            if (*v == "sad") {
                cfg.match.metric = Metric::SAD;
            } else if (*v == "ssd") {
                cfg.match.metric = Metric::SSD;
            } else {
                throw ConfigError("unknown metric '" + *v + "'");
            }
        }
        s.integer("precision", cfg.match.precision);
        s.integer("d_max", cfg.match.d_max);
        s.integer("block_radius", cfg.match.block_radius);
        s.number("lambda", cfg.energy.smoothing_coefficient);
        s.integer("truncation", cfg.energy.truncation);
        s.number("cost_scale", cfg.energy.cost_scale);
        s.integer("iterations", cfg.iterations);
        s.integer("max_sweeps", cfg.max_sweeps);
        if (auto v = s.str("occlusion_penalty"); v && *v != "auto") {
            cfg.occlusion_penalty = to_double("occlusion_penalty", *v);
        }
        if (auto v = s.str("debug_dir")) {
            cfg.debug_dir = s.resolve(*v).pattern;
        }
        s.boolean("debug_occlusion_slices", cfg.debug_occlusion_slices);
        cfg.validate();
    }

    if (kv.has_section("ground_truth")) {
        Section s(kv, "ground_truth", base_dir);
        GroundTruthInput gt;
        gt.disparity = s.path("disparity");
        s.number("scale", gt.scale);
        s.boolean("zero_is_unknown", gt.zero_is_unknown);
        gt.nonocc = s.optional_path("nonocc");
        gt.all = s.optional_path("all");
        gt.disc = s.optional_path("disc");
        s.number("threshold", gt.threshold);
        if (!(gt.scale > 0.0) || !(gt.threshold >= 0.0)) {
            throw ConfigError("[ground_truth] scale must be positive and threshold non-negative");
        }
        m.ground_truth = gt;
    }

    if (kv.has_section("synthesis")) {
        Section s(kv, "synthesis", base_dir);
        SynthesisInput syn;
        syn.b = read_triple(s, "b_");
        syn.reference = s.path("reference");
        s.number("alpha", syn.alpha);
        s.number("baseline_ratio", syn.baseline_ratio);
        if (!(syn.alpha > 0.0 && syn.alpha < 1.0) || !(syn.baseline_ratio > 0.0)) {
            throw ConfigError("[synthesis] alpha must lie in (0, 1) and baseline_ratio be positive");
        }
        m.synthesis = syn;
    }

    {
        Section s(kv, "sweep", base_dir);
        auto& g = m.sweep;
        if (auto v = s.str("lambdas")) {
            g.lambdas.clear();
            for (const auto& item : split_list(*v)) {
                g.lambdas.push_back(to_double("lambdas", item));
            }
        }
        if (auto v = s.str("precisions")) {
            g.precisions.clear();
            for (const auto& item : split_list(*v)) {
                g.precisions.push_back(to_int("precisions", item));
                if (!is_supported_precision(g.precisions.back())) {
                    throw ConfigError("precisions must be drawn from 1, 2, 4");
                }
            }
        }
        if (auto v = s.str("modes")) {
            g.modes.clear();
            for (const auto& item : split_list(*v)) {
                g.modes.push_back(parse_cost_model(item));
            }
        }
        s.integer("workers", g.workers);
        s.boolean("record_runtime", g.record_runtime);
        if (g.lambdas.empty() || g.precisions.empty() || g.modes.empty()) {
            throw ConfigError("sweep grid must be non-empty");
        }
        if (g.workers < 1) {
            throw ConfigError("[sweep] workers must be >= 1");
        }
    }

    {
        Section s(kv, "evaluate", base_dir);
        m.evaluate.disparity = s.optional_path("disparity");
        s.number("disparity_scale", m.evaluate.disparity_scale);
        m.evaluate.image = s.optional_path("image");
    }

    {
        Section s(kv, "output", base_dir);
        m.output_dir = s.resolve(s.str("dir").value_or("out")).pattern;
        s.number("disparity_scale", m.disparity_scale);
        if (m.disparity_scale < 0.0) {
            throw ConfigError("[output] disparity_scale must be positive");
        }
    }

    kv.reject_unused();
    return m;
}

RunManifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open manifest " + path.string());
    }
    auto base = path.parent_path();
    if (base.empty()) {
        base = ".";
    }
    return parse_manifest(in, base);
}

void check_inputs_exist(const RunManifest& m, bool need_input_triple) {
    auto check = [](const std::filesystem::path& p) {
        if (!std::filesystem::exists(p)) {
            throw IoError("missing input file " + p.string());
        }
    };
    for (int f : m.frame_numbers()) {
        if (need_input_triple) {
            if (m.input.center.pattern.empty()) {
                throw ConfigError("manifest has no [input] section");
            }
            check(m.input.center.at(f));
            check(m.input.left.at(f));
            check(m.input.right.at(f));
        }
        if (m.ground_truth) {
            check(m.ground_truth->disparity.at(f));
            for (const auto* mask : {&m.ground_truth->nonocc, &m.ground_truth->all, &m.ground_truth->disc}) {
                if (*mask) {
                    check((*mask)->at(f));
                }
            }
        }
        if (m.synthesis) {
            check(m.synthesis->b.center.at(f));
            check(m.synthesis->b.left.at(f));
            check(m.synthesis->b.right.at(f));
            check(m.synthesis->reference.at(f));
        }
    }
}

} // namespace tristereo::app
