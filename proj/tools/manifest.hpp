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

#include "tristereo/cost_volume.hpp"
#include "tristereo/pipeline.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tristereo::app {

/// Sectioned key=value text. '#' starts a comment; keys before any section
/// header belong to the "" section.
class KeyValueFile {
public:
    static KeyValueFile parse(std::istream& in);

    bool has(const std::string& section, const std::string& key) const;
    bool has_section(const std::string& section) const { return sections_.count(section) != 0; }
    std::optional<std::string> get(const std::string& section, const std::string& key) const;
    /// Marks the key consumed; used to reject unknown keys.
    std::optional<std::string> take(const std::string& section, const std::string& key);
    /// Throws ConfigError naming the first key never taken.
    void reject_unused() const;

private:
    struct Entry {
        std::string value;
        int line = 0;
        bool used = false;
    };
    std::map<std::string, std::map<std::string, Entry>> sections_;
};

/// Path that may hold a printf-style frame number (e.g. "cam3_%03d.pgm").
struct FramePath {
    std::filesystem::path pattern;
    std::filesystem::path at(int frame) const;
};

struct ViewTriple {
    FramePath center;
    FramePath left;
    FramePath right;
};

struct GroundTruthInput {
    FramePath disparity;
    double scale = 1.0;
    bool zero_is_unknown = true;
    std::optional<FramePath> nonocc;
    std::optional<FramePath> all;
    std::optional<FramePath> disc;
    double threshold = 1.0;
};

/// Second triple centred on view B plus the captured view V between A and B.
struct SynthesisInput {
    ViewTriple b;
    FramePath reference;
    double alpha = 0.5;
    double baseline_ratio = 2.0;
};

struct SweepGrid {
    std::vector<double> lambdas{1, 2, 3, 4};
    std::vector<int> precisions{1, 2, 4};
    std::vector<CostModel> modes{CostModel::Sum, CostModel::OccAware};
    int workers = 1;
    bool record_runtime = true;
};

struct EvaluateInput {
    std::optional<FramePath> disparity;
    double disparity_scale = 1.0;
    std::optional<FramePath> image;
};

struct RunManifest {
    std::filesystem::path base_dir;
    std::string name = "sequence";
    ViewTriple input;
    int first_frame = 0;
    int frames = 1;
    PipelineConfig pipeline;
    std::optional<GroundTruthInput> ground_truth;
    std::optional<SynthesisInput> synthesis;
    SweepGrid sweep;
    EvaluateInput evaluate;
    std::filesystem::path output_dir;
    double disparity_scale = 0.0;  ///< 0 picks floor(255 / d_max)

    double output_scale() const;
    std::vector<int> frame_numbers() const;
};

/// Relative paths resolve against base_dir. Throws ConfigError.
RunManifest parse_manifest(std::istream& in, const std::filesystem::path& base_dir);
RunManifest load_manifest(const std::filesystem::path& path);

/// Throws IoError naming the first referenced input that does not exist.
void check_inputs_exist(const RunManifest& m, bool need_input_triple);

} // namespace tristereo::app
