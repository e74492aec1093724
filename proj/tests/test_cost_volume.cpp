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
#include "tristereo/cost_volume.hpp"
#include "tristereo/errors.hpp"

#include <doctest.h>

#include <random>

using namespace tristereo;

namespace {

CostMode mode_of(CostModel m, double penalty = 1000.0) {
    CostMode mode;
    mode.model = m;
    mode.occlusion_penalty = penalty;
    return mode;
}

} // namespace

TEST_CASE("combining side similarities") {
    const auto occ = mode_of(CostModel::OccAware, 77.0);
    CHECK(combine_cost(10, 20, true, true, occ) == 15.0);
    CHECK(combine_cost(10, 20, false, true, occ) == 20.0);
    CHECK(combine_cost(10, 20, true, false, occ) == 10.0);
    CHECK(combine_cost(10, 20, false, false, occ) == 77.0);
    CHECK(combine_cost(10, 20, true, true, mode_of(CostModel::Min)) == 10.0);
    CHECK(combine_cost(10, 20, true, true, mode_of(CostModel::Sum)) == 30.0);
    // Visibility flags do not matter outside the occlusion-aware model.
    CHECK(combine_cost(10, 20, false, false, mode_of(CostModel::Sum)) == 30.0);
}

TEST_CASE("occlusion-aware cost lies between the side similarities") {
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> u(0.0, 500.0);
    const auto occ = mode_of(CostModel::OccAware);
    for (int i = 0; i < 200; ++i) {
        const double a = u(rng), b = u(rng);
        const bool vl = rng() & 1, vr = rng() & 1;
        if (!vl && !vr) {
            continue;
        }
        const double c = combine_cost(a, b, vl, vr, occ);
        CHECK(c >= std::min(a, b));
        CHECK(c <= std::max(a, b));
    }
}

TEST_CASE("cost volume entries equal cost_at") {
    std::mt19937 rng(9);
    const auto c = oracle::random_image(4, 4, rng);
    const auto l = oracle::random_image(4, 4, rng);
    const auto r = oracle::random_image(4, 4, rng);
    MatchParams p;
    p.d_max = 2;
    CHECK(p.levels() == 3);
    OcclusionVolume occ(4, 4, 3, true);
    occ.set(1, 2, 1, false, true);
    occ.set(3, 0, 2, false, false);
    for (CostModel m : {CostModel::Sum, CostModel::Min, CostModel::OccAware}) {
        const auto mode = mode_of(m);
        const auto vol = build_cost_volume(c, l, r, mode, occ, p);
        CHECK(vol.data().size() == 48);
        for (int y = 0; y < 4; ++y) {
            for (int x = 0; x < 4; ++x) {
                for (int t = 0; t < 3; ++t) {
                    CHECK(vol.at(x, y, t) == cost_at(c, l, r, x, y, t, mode, occ, p));
                }
            }
        }
    }
}

TEST_CASE("all-visible occlusion-aware volume is half the sum volume") {
    std::mt19937 rng(10);
    const auto c = oracle::random_image(9, 7, rng);
    const auto l = oracle::random_image(9, 7, rng);
    const auto r = oracle::random_image(9, 7, rng);
    MatchParams p;
    p.d_max = 4;
    p.precision = 2;
    const auto occ = OcclusionVolume::all_visible(9, 7, p.levels());
    const auto sum = build_cost_volume(c, l, r, mode_of(CostModel::Sum), occ, p);
    const auto half = build_cost_volume(c, l, r, mode_of(CostModel::OccAware), occ, p);
    for (std::size_t i = 0; i < sum.data().size(); ++i) {
        CHECK(half.data()[i] == sum.data()[i] / 2.0);
    }
}

TEST_CASE("random entries agree with a scalar re-evaluation") {
    std::mt19937 rng(12);
    const int w = 8, h = 8;
    std::uniform_int_distribution<int> byte(0, 255);
    std::vector<int> cv(w * h), lv(w * h), rv(w * h);
    for (auto* v : {&cv, &lv, &rv}) {
        for (auto& s : *v) s = byte(rng);
    }
    auto img = [&](const std::vector<int>& v) { return LumaImage(w, h, std::vector<float>(v.begin(), v.end())); };
    MatchParams p;
    p.d_max = 5;
    const auto occ = OcclusionVolume::all_visible(w, h, p.levels());
    const auto vol = build_cost_volume(img(cv), img(lv), img(rv), mode_of(CostModel::Sum), occ, p);
    std::uniform_int_distribution<int> px(0, w - 1), pt(0, p.d_max);
    for (int i = 0; i < 50; ++i) {
        const int x = px(rng), y = px(rng), t = pt(rng);
        const double want = oracle::integer_sad(cv, lv, w, h, x, y, t, +1, 1) +
                            oracle::integer_sad(cv, rv, w, h, x, y, t, -1, 1);
        CHECK(vol.at(x, y, t) == doctest::Approx(want));
    }
}

TEST_CASE("volume construction is deterministic") {
    std::mt19937 rng(13);
    const auto c = oracle::random_image(16, 12, rng);
    const auto l = oracle::random_image(16, 12, rng);
    const auto r = oracle::random_image(16, 12, rng);
    MatchParams p;
    p.precision = 4;
    p.d_max = 3;
    OcclusionVolume occ(16, 12, p.levels(), true);
    occ.set(5, 5, 5, false, false);
    const auto mode = mode_of(CostModel::OccAware, 33.0);
    CHECK(build_cost_volume(c, l, r, mode, occ, p) == build_cost_volume(c, l, r, mode, occ, p));
}

TEST_CASE("configuration errors") {
    const LumaImage a(4, 4), b(5, 4);
    MatchParams p;
    const auto occ = OcclusionVolume::all_visible(4, 4, p.levels());
    CHECK_THROWS_AS(build_cost_volume(a, b, a, mode_of(CostModel::Sum), occ, p), ConfigError);
    CHECK_THROWS_AS(build_cost_volume(a, a, a, mode_of(CostModel::OccAware), OcclusionVolume(4, 4, 3, true), p),
                    ConfigError);
    CHECK_THROWS_AS(mode_of(CostModel::OccAware, 0.0).validate(), ConfigError);
    CHECK(parse_cost_model("OCC_AWARE") == CostModel::OccAware);
    CHECK_THROWS_AS(parse_cost_model("median"), ConfigError);
}

TEST_CASE("default penalty is twice the mean finite minimum") {
    SimilarityVolumes sims{CostVolume(2, 1, 2), CostVolume(2, 1, 2)};
    sims.left.set(0, 0, 0, 4.0);
    sims.right.set(0, 0, 0, 8.0);
    sims.left.set(1, 0, 0, 6.0);
    sims.right.set(1, 0, 0, 2.0);
    sims.left.set(0, 0, 1, kLargeCost);
    sims.right.set(0, 0, 1, kLargeCost);
    sims.left.set(1, 0, 1, 10.0);
    sims.right.set(1, 0, 1, 12.0);
    // Finite minima 4, 2, 10 -> mean 16/3.
    CHECK(default_occlusion_penalty(sims) == doctest::Approx(32.0 / 3.0));
}
