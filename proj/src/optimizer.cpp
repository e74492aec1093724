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

#include "tristereo/optimizer.hpp"

#include "tristereo/errors.hpp"
#include "tristereo/max_flow.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <string>

namespace tristereo {

namespace {

constexpr double kMaxExactInteger = 9007199254740992.0;  // 2^53

void check_labels(const DisparityMap& map, int width, int height, int levels) {
    if (map.width() != width || map.height() != height) {
        throw ConfigError("disparity map and cost volume differ in shape");
    }
    for (auto l : map.levels()) {
        if (l < 0 || l >= levels) {
            throw ConfigError("disparity map holds a level outside the cost volume");
        }
    }
}

std::int64_t scaled(double v, double scale) {
    const double s = std::round(v * scale);
    if (!(std::abs(s) <= kMaxExactInteger)) {
        throw ConfigError("scaled cost exceeds the exact integer range; lower cost_scale");
    }
    return static_cast<std::int64_t>(s);
}

} // namespace

void EnergyParams::validate() const {
    if (!(smoothing_coefficient >= 0.0) || !std::isfinite(smoothing_coefficient)) {
        throw ConfigError("smoothing coefficient must be finite and non-negative");
    }
    if (truncation < 1) {
        throw ConfigError("truncation must be >= 1");
    }
    if (!(cost_scale > 0.0) || !std::isfinite(cost_scale)) {
        throw ConfigError("cost_scale must be positive");
    }
}

std::string_view to_string(Optimizer optimizer) {
    return optimizer == Optimizer::WTA ? "wta" : "graph_cut";
}

Optimizer parse_optimizer(std::string_view text) {
    std::string s(text);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "wta") {
        return Optimizer::WTA;
    }
    if (s == "graph_cut" || s == "graphcut" || s == "gc") {
        return Optimizer::GraphCut;
    }
    throw ConfigError("unknown optimizer '" + std::string(text) + "'");
}

DisparityMap wta_disparity(const CostVolume& vol, int precision) {
    DisparityMap out(vol.width(), vol.height(), precision, 0);
    detail::parallel_rows(vol.height(), [&](int y) {
        for (int x = 0; x < vol.width(); ++x) {
            const auto costs = vol.pixel(x, y);
            const auto best = std::min_element(costs.begin(), costs.end());
            out.set(x, y, static_cast<std::int32_t>(best - costs.begin()));
        }
    });
    return out;
}

double energy(const DisparityMap& map, const CostVolume& vol, const EnergyParams& ep) {
    check_labels(map, vol.width(), vol.height(), vol.levels());
    double data = 0.0;
    std::int64_t smooth = 0;
    for (int y = 0; y < map.height(); ++y) {
        for (int x = 0; x < map.width(); ++x) {
            const int d = map.level(x, y);
            data += vol.at(x, y, d);
            if (x + 1 < map.width()) {
                smooth += std::min(std::abs(d - map.level(x + 1, y)), ep.truncation);
            }
            if (y + 1 < map.height()) {
                smooth += std::min(std::abs(d - map.level(x, y + 1)), ep.truncation);
            }
        }
    }
    return data + ep.smoothing_coefficient * static_cast<double>(smooth);
}

IntegerCostVolume to_integer_costs(const CostVolume& vol, const EnergyParams& ep) {
    ep.validate();
    IntegerCostVolume out{vol.width(), vol.height(), vol.levels(), {}};
    out.data.reserve(vol.data().size());
    for (double c : vol.data()) {
        out.data.push_back(scaled(c, ep.cost_scale));
    }
    return out;
}

std::int64_t integer_smoothness_weight(const EnergyParams& ep) {
    ep.validate();
    return scaled(ep.smoothing_coefficient, ep.cost_scale);
}

std::int64_t integer_energy(const DisparityMap& map, const IntegerCostVolume& vol, std::int64_t lambda,
                            int truncation) {
    std::int64_t data = 0;
    std::int64_t smooth = 0;
    for (int y = 0; y < map.height(); ++y) {
        for (int x = 0; x < map.width(); ++x) {
            const int d = map.level(x, y);
            data += vol.at(x, y, d);
            if (x + 1 < map.width()) {
                smooth += std::min(std::abs(d - map.level(x + 1, y)), truncation);
            }
            if (y + 1 < map.height()) {
                smooth += std::min(std::abs(d - map.level(x, y + 1)), truncation);
            }
        }
    }
    return data + lambda * smooth;
}

// ---------------------------------------------------------------------------

namespace {

// Builds and solves the binary problem "keep current label (0) or switch to
// alpha (1)" for every pixel. Switching corresponds to the sink side.
class ExpansionMoveSolver {
public:
    ExpansionMoveSolver(const IntegerCostVolume& costs, std::int64_t lambda, int truncation)
        : costs_(costs), lambda_(lambda), truncation_(truncation),
          unary_(static_cast<std::size_t>(costs.width) * static_cast<std::size_t>(costs.height)) {}

    // Writes the proposed labeling into `proposal`.
    void solve(const DisparityMap& current, int alpha, DisparityMap& proposal) {
        const int w = costs_.width;
        const int h = costs_.height;
        graph_.reset(w * h);
        // unary_[p] = E_p(1) - E_p(0) plus pairwise contributions on x_p.
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                unary_[node(x, y)] = costs_.at(x, y, alpha) - costs_.at(x, y, current.level(x, y));
            }
        }
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                if (x + 1 < w) {
                    add_pair(current, alpha, x, y, x + 1, y);
                }
                if (y + 1 < h) {
                    add_pair(current, alpha, x, y, x, y + 1);
                }
            }
        }
        for (int p = 0; p < w * h; ++p) {
            const std::int64_t u = unary_[static_cast<std::size_t>(p)];
            // Sink side pays the source capacity.
            graph_.add_terminal(p, std::max<std::int64_t>(u, 0), std::max<std::int64_t>(-u, 0));
        }
        const MaxFlowResult cut = max_flow(graph_);
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                proposal.set(x, y, cut.source_side[node(x, y)] ? current.level(x, y) : alpha);
            }
        }
    }

private:
    std::size_t node(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(costs_.width) + static_cast<std::size_t>(x);
    }

    std::int64_t smooth(int a, int b) const { return lambda_ * std::min(std::abs(a - b), truncation_); }

    void add_pair(const DisparityMap& current, int alpha, int xp, int yp, int xq, int yq) {
        const int fp = current.level(xp, yp);
        const int fq = current.level(xq, yq);
        const std::int64_t e00 = smooth(fp, fq);
        const std::int64_t e01 = smooth(fp, alpha);
        const std::int64_t e10 = smooth(alpha, fq);
        const std::int64_t e11 = 0;
        // E = e00 + (e10 - e00) x_p + (e11 - e10) x_q + (e01 + e10 - e00 - e11) (1 - x_p) x_q
        unary_[node(xp, yp)] += e10 - e00;
        unary_[node(xq, yq)] += e11 - e10;
        std::int64_t w = e01 + e10 - e00 - e11;
        if (w < 0) {
            // Non-submodular term: raise e01 to the nearest submodular value.
            w = 0;
        }
        if (w > 0) {
            graph_.add_edge(static_cast<int>(node(xp, yp)), static_cast<int>(node(xq, yq)), w, 0);
        }
    }

    const IntegerCostVolume& costs_;
    std::int64_t lambda_;
    int truncation_;
    std::vector<std::int64_t> unary_;
    FlowGraph graph_;
};

} // namespace

ExpansionResult alpha_expansion(const CostVolume& vol, const EnergyParams& ep, const DisparityMap& init,
                                const ExpansionOptions& options) {
    ep.validate();
    if (!init.is_total()) {
        throw ConfigError("alpha expansion needs a total initial map");
    }
    check_labels(init, vol.width(), vol.height(), vol.levels());
    if (options.max_sweeps < 1) {
        throw ConfigError("max_sweeps must be >= 1");
    }
    const IntegerCostVolume costs = to_integer_costs(vol, ep);
    const std::int64_t lambda = integer_smoothness_weight(ep);

    ExpansionResult result{init, 0, 0, 0, 0};
    DisparityMap& current = result.map;
    DisparityMap proposal = init;
    std::int64_t current_energy = integer_energy(current, costs, lambda, ep.truncation);
    result.initial_energy = current_energy;

    ExpansionMoveSolver solver(costs, lambda, ep.truncation);
    for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
        bool changed = false;
        for (int alpha = 0; alpha < vol.levels(); ++alpha) {
            solver.solve(current, alpha, proposal);
            const std::int64_t e = integer_energy(proposal, costs, lambda, ep.truncation);
            const bool accept = e < current_energy;
            if (options.trace) {
                options.trace(ExpansionMove{sweep, alpha, current_energy, e, accept});
            }
            if (accept) {
                current = proposal;
                current_energy = e;
                changed = true;
                ++result.accepted_moves;
            } else {
                proposal = current;
            }
        }
        result.sweeps = sweep + 1;
        if (!changed) {
            break;
        }
    }
    result.final_energy = current_energy;
    return result;
}

} // namespace tristereo
