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

#include "oracles.hpp"
#include "tristereo/errors.hpp"
#include "tristereo/optimizer.hpp"

#include <doctest.h>

#include <random>

using namespace tristereo;

namespace {

CostVolume random_volume(int w, int h, int levels, std::mt19937& rng, double hi = 100.0) {
    std::uniform_real_distribution<double> u(0.0, hi);
    CostVolume vol(w, h, levels);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            for (int t = 0; t < levels; ++t) {
                vol.set(x, y, t, u(rng));
            }
        }
    }
    return vol;
}

CostVolume integer_volume(int w, int h, int levels, std::mt19937& rng, int hi) {
    std::uniform_int_distribution<int> u(0, hi);
    CostVolume vol(w, h, levels);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            for (int t = 0; t < levels; ++t) {
                vol.set(x, y, t, u(rng));
            }
        }
    }
    return vol;
}

DisparityMap random_labels(int w, int h, int levels, std::mt19937& rng) {
    std::uniform_int_distribution<int> u(0, levels - 1);
    DisparityMap m(w, h, 1, 0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            m.set(x, y, u(rng));
        }
    }
    return m;
}

// Direct loop over every pixel and its right and lower neighbours.
double energy_oracle(const DisparityMap& m, const CostVolume& v, double lambda, int tau) {
    double e = 0.0;
    for (int y = 0; y < m.height(); ++y) {
        for (int x = 0; x < m.width(); ++x) {
            e += v.at(x, y, m.level(x, y));
        }
    }
    for (int y = 0; y < m.height(); ++y) {
        for (int x = 0; x < m.width(); ++x) {
            if (x > 0) e += lambda * std::min(std::abs(m.level(x, y) - m.level(x - 1, y)), tau);
            if (y > 0) e += lambda * std::min(std::abs(m.level(x, y) - m.level(x, y - 1)), tau);
        }
    }
    return e;
}

} // namespace

TEST_CASE("WTA picks the argmin with ties toward the smallest level") {
    CostVolume vol(2, 1, 3);
    vol.set(0, 0, 0, 5);
    vol.set(0, 0, 1, 2);
    vol.set(0, 0, 2, 9);
    vol.set(1, 0, 0, 3);
    vol.set(1, 0, 1, 3);
    vol.set(1, 0, 2, 7);
    const auto m = wta_disparity(vol, 1);
    CHECK(m.level(0, 0) == 1);
    CHECK(m.level(1, 0) == 0);
}

TEST_CASE("WTA equals a per-pixel scan") {
    std::mt19937 rng(31);
    const auto vol = integer_volume(6, 6, 5, rng, 6);
    const auto m = wta_disparity(vol, 2);
    CHECK(m.precision() == 2);
    for (int y = 0; y < 6; ++y) {
        for (int x = 0; x < 6; ++x) {
            int best = 0;
            for (int t = 1; t < 5; ++t) {
                if (vol.at(x, y, t) < vol.at(x, y, best)) best = t;
            }
            CHECK(m.level(x, y) == best);
        }
    }
}

TEST_CASE("energy terms") {
    const CostVolume zero(3, 3, 4);
    EnergyParams ep;
    CHECK(energy(DisparityMap(3, 3, 1, 2), zero, ep) == 0.0);

    const CostVolume z2(2, 1, 4);
    EnergyParams unit;
    unit.smoothing_coefficient = 1.0;
    unit.truncation = 2;
    CHECK(energy(DisparityMap(2, 1, 1, std::vector<std::int32_t>{0, 3}), z2, unit) == 2.0);

    std::mt19937 rng(3);
    const auto vol = random_volume(3, 3, 4, rng);
    const auto m = random_labels(3, 3, 4, rng);
    EnergyParams ep3;
    ep3.smoothing_coefficient = 1.7;
    ep3.truncation = 2;
    CHECK(energy(m, vol, ep3) == doctest::Approx(energy_oracle(m, vol, 1.7, 2)));
}

TEST_CASE("integer cost conversion") {
    CostVolume vol(1, 1, 2);
    vol.set(0, 0, 0, 1.26);
    EnergyParams ep;
    ep.cost_scale = 100.0;
    const auto iv = to_integer_costs(vol, ep);
    CHECK(iv.at(0, 0, 0) == 126);
    CHECK(iv.at(0, 0, 1) == 0);
    ep.smoothing_coefficient = 2.5;
    CHECK(integer_smoothness_weight(ep) == 250);

    vol.set(0, 0, 1, 1e12);
    ep.cost_scale = 1e6;
    CHECK_THROWS_AS(to_integer_costs(vol, ep), ConfigError);
}

TEST_CASE("integer conversion preserves argmin when the top two are separated") {
    std::mt19937 rng(17);
    EnergyParams ep;
    ep.cost_scale = 1000.0;
    for (int trial = 0; trial < 20; ++trial) {
        const auto vol = random_volume(5, 5, 6, rng, 10.0);
        const auto iv = to_integer_costs(vol, ep);
        for (int y = 0; y < 5; ++y) {
            for (int x = 0; x < 5; ++x) {
                auto c = vol.pixel(x, y);
                std::vector<double> sorted(c.begin(), c.end());
                std::sort(sorted.begin(), sorted.end());
                if (sorted[1] - sorted[0] <= 2.0 / ep.cost_scale) {
                    continue;
                }
                int best_real = 0, best_int = 0;
                for (int t = 1; t < 6; ++t) {
                    if (c[t] < c[best_real]) best_real = t;
                    if (iv.at(x, y, t) < iv.at(x, y, best_int)) best_int = t;
                }
                CHECK(best_real == best_int);
            }
        }
    }
}

TEST_CASE("a dominant label wins everywhere") {
    CostVolume vol(5, 4, 3, 100.0);
    for (int y = 0; y < 4; ++y) {
        for (int x = 0; x < 5; ++x) {
            vol.set(x, y, 2, 0.0);
        }
    }
    EnergyParams ep;
    ep.smoothing_coefficient = 0.01;
    const auto r = alpha_expansion(vol, ep, DisparityMap(5, 4, 1, 0));
    CHECK(r.map == DisparityMap(5, 4, 1, 2));
    CHECK(r.final_energy == 0);
}

TEST_CASE("two-pixel problems reach the enumerated optimum") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        const auto vol = integer_volume(1, 2, 2, rng, 20);
        EnergyParams ep;
        ep.smoothing_coefficient = static_cast<double>(rng() % 15);
        ep.truncation = 1 + static_cast<int>(rng() % 2);
        const auto iv = to_integer_costs(vol, ep);
        const auto lambda = integer_smoothness_weight(ep);
        std::int64_t best = std::numeric_limits<std::int64_t>::max();
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                best = std::min(best, integer_energy(DisparityMap(1, 2, 1, std::vector<std::int32_t>{a, b}), iv,
                                                     lambda, ep.truncation));
            }
        }
        const auto init = random_labels(1, 2, 2, rng);
        const auto r = alpha_expansion(vol, ep, init);
        CHECK(r.final_energy == best);
        CHECK(integer_energy(r.map, iv, lambda, ep.truncation) == best);
    }
}

TEST_CASE("expansion never raises the energy") {
    std::mt19937 rng(50);
    for (int trial = 0; trial < 50; ++trial) {
        const auto vol = random_volume(8, 8, 4, rng);
        EnergyParams ep;
        ep.smoothing_coefficient = 1.0 + static_cast<double>(rng() % 40);
        const auto init = random_labels(8, 8, 4, rng);
        const auto r = alpha_expansion(vol, ep, init);
        CHECK(r.final_energy <= r.initial_energy);
        // Real-valued energy agrees up to the accumulated rounding of the integer conversion.
        CHECK(energy(r.map, vol, ep) <= energy(init, vol, ep) + 64.0 / ep.cost_scale);
    }
}

TEST_CASE("expansion beats a single-pixel local optimum check") {
    // No single-pixel relabelling lowers the integer energy of the result.
    std::mt19937 rng(60);
    const auto vol = random_volume(6, 5, 5, rng);
    EnergyParams ep;
    ep.smoothing_coefficient = 20.0;
    const auto r = alpha_expansion(vol, ep, DisparityMap(6, 5, 1, 0), ExpansionOptions{50, {}});
    const auto iv = to_integer_costs(vol, ep);
    const auto lambda = integer_smoothness_weight(ep);
    for (int y = 0; y < 5; ++y) {
        for (int x = 0; x < 6; ++x) {
            for (int t = 0; t < 5; ++t) {
                auto m = r.map;
                m.set(x, y, t);
                CHECK(integer_energy(m, iv, lambda, ep.truncation) >= r.final_energy);
            }
        }
    }
}

TEST_CASE("zero smoothing reproduces WTA") {
    std::mt19937 rng(70);
    for (int trial = 0; trial < 10; ++trial) {
        const auto vol = integer_volume(7, 5, 6, rng, 4);  // plenty of ties
        EnergyParams ep;
        ep.smoothing_coefficient = 0.0;
        const auto r = alpha_expansion(vol, ep, DisparityMap(7, 5, 1, 0));
        CHECK(r.map == wta_disparity(vol, 1));
    }
}

TEST_CASE("trace reports each move and sweeps stop at convergence") {
    std::mt19937 rng(80);
    const auto vol = random_volume(4, 4, 3, rng);
    EnergyParams ep;
    std::vector<ExpansionMove> moves;
    ExpansionOptions opts;
    opts.max_sweeps = 10;
    opts.trace = [&](const ExpansionMove& m) { moves.push_back(m); };
    const auto r = alpha_expansion(vol, ep, DisparityMap(4, 4, 1, 0), opts);
    CHECK(moves.size() == static_cast<std::size_t>(r.sweeps * 3));
    CHECK(r.sweeps < 10);
    std::int64_t last = r.initial_energy;
    for (const auto& m : moves) {
        CHECK(m.energy_before == last);
        if (m.accepted) {
            CHECK(m.energy_after < m.energy_before);
            last = m.energy_after;
        }
    }
    CHECK(last == r.final_energy);
    // The last sweep accepts nothing.
    for (std::size_t i = moves.size() - 3; i < moves.size(); ++i) {
        CHECK_FALSE(moves[i].accepted);
    }
}

TEST_CASE("expansion is deterministic") {
    std::mt19937 rng(90);
    const auto vol = random_volume(10, 8, 6, rng);
    EnergyParams ep;
    ep.smoothing_coefficient = 15.0;
    const auto init = random_labels(10, 8, 6, rng);
    CHECK(alpha_expansion(vol, ep, init).map == alpha_expansion(vol, ep, init).map);
}

TEST_CASE("expansion preconditions") {
    const CostVolume vol(2, 2, 3);
    EnergyParams ep;
    DisparityMap partial(2, 2, 1, 0);
    partial.invalidate(0, 0);
    CHECK_THROWS_AS(alpha_expansion(vol, ep, partial), ConfigError);
    CHECK_THROWS_AS(alpha_expansion(vol, ep, DisparityMap(2, 2, 1, 3)), ConfigError);
    ep.truncation = 0;
    CHECK_THROWS_AS(alpha_expansion(vol, ep, DisparityMap(2, 2, 1, 0)), ConfigError);
    CHECK(parse_optimizer("GRAPH_CUT") == Optimizer::GraphCut);
    CHECK_THROWS_AS(parse_optimizer("bp"), ConfigError);
}
