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
#include "tristereo/similarity.hpp"

#include <doctest.h>

#include <random>

using namespace tristereo;

TEST_CASE("sample_subpixel interpolates horizontally") {
    const LumaImage img(2, 1, std::vector<float>{10.0f, 20.0f});
    CHECK(sample_subpixel(img, 0.5, 0) == doctest::Approx(15.0));
    CHECK(sample_subpixel(img, 0.25, 0) == doctest::Approx(12.5));
    CHECK(sample_subpixel(img, 1.0, 0) == 20.0);
    CHECK(sample_subpixel(img, 0.0, 0) == 10.0);
}

TEST_CASE("sim on trivial fragments") {
    const LumaImage flat(8, 4, 77.0f);
    MatchParams p;
    for (int t = 0; t <= 4; ++t) {
        CHECK(sim(flat, flat, 2, 1, t, Side::Left, p) == 0.0);
    }

    MatchParams single;
    single.block_radius = 0;
    LumaImage c(8, 1, 0.0f), l(8, 1, 0.0f);
    c.set(2, 0, 100.0f);
    l.set(5, 0, 90.0f);
    CHECK(sim(c, l, 2, 0, 3, Side::Left, single) == 10.0);
    single.metric = Metric::SSD;
    CHECK(sim(c, l, 2, 0, 3, Side::Left, single) == 100.0);
}

TEST_CASE("sim against a shifted 3x3 pattern") {
    // Center pattern with a copy shifted one column to the right in the left view.
    const std::vector<int> cv{1, 2, 3, 0, 4, 5, 6, 0, 7, 8, 9, 0};
    const std::vector<int> lv{0, 1, 2, 3, 0, 4, 5, 6, 0, 7, 8, 9};
    std::vector<float> cf(cv.begin(), cv.end()), lf(lv.begin(), lv.end());
    const LumaImage c(4, 3, cf), l(4, 3, lf);
    MatchParams p;
    CHECK(sim(c, l, 1, 1, 1, Side::Left, p) == 0.0);
    for (int t = 0; t <= 3; ++t) {
        CHECK(sim(c, l, 1, 1, t, Side::Left, p) == doctest::Approx(oracle::integer_sad(cv, lv, 4, 3, 1, 1, t, +1, 1)));
    }
    // Unshifted comparison: every pair differs by its left neighbour step.
    CHECK(sim(c, l, 1, 1, 0, Side::Left, p) == doctest::Approx(18.0));
}

TEST_CASE("sim with no contributing samples is LARGE") {
    const LumaImage img(4, 1, 5.0f);
    MatchParams p;
    p.block_radius = 0;
    CHECK(sim(img, img, 0, 0, 1, Side::Right, p) == kLargeCost);
}

TEST_CASE("precision 1 matches an integer-only reference on random probes") {
    std::mt19937 rng(11);
    const int w = 20, h = 10;
    std::uniform_int_distribution<int> byte(0, 255);
    std::vector<int> cv(w * h), sv(w * h);
    for (auto& v : cv) v = byte(rng);
    for (auto& v : sv) v = byte(rng);
    const LumaImage c(w, h, std::vector<float>(cv.begin(), cv.end()));
    const LumaImage s(w, h, std::vector<float>(sv.begin(), sv.end()));
    std::uniform_int_distribution<int> px(0, w - 1), py(0, h - 1), pt(0, 8), pr(0, 2), ps(0, 1);
    for (int i = 0; i < 100; ++i) {
        MatchParams p;
        p.block_radius = pr(rng);
        const int x = px(rng), y = py(rng), t = pt(rng);
        const Side side = ps(rng) ? Side::Left : Side::Right;
        CHECK(sim(c, s, x, y, t, side, p) ==
              doctest::Approx(oracle::integer_sad(cv, sv, w, h, x, y, t, static_cast<int>(side), p.block_radius)));
    }
}

TEST_CASE("sim is non-negative and SAD is symmetric") {
    std::mt19937 rng(5);
    const auto a = oracle::random_image(12, 6, rng);
    const auto b = oracle::random_image(12, 6, rng);
    MatchParams p;
    p.precision = 4;
    for (int t = 0; t < 20; ++t) {
        CHECK(sim(a, b, 4, 3, t, Side::Left, p) >= 0.0);
    }
    MatchParams p0;
    CHECK(sim(a, b, 5, 2, 0, Side::Left, p0) == sim(b, a, 5, 2, 0, Side::Left, p0));
}

TEST_CASE("quarter-pixel displacement samples between columns") {
    const LumaImage c(4, 1, std::vector<float>{0, 0, 15, 0});
    const LumaImage l(4, 1, std::vector<float>{0, 0, 10, 20});
    MatchParams p;
    p.block_radius = 0;
    p.precision = 4;
    // t = 2 means half a pixel: left sample at 2.5 is 15.
    CHECK(sim(c, l, 2, 0, 2, Side::Left, p) == doctest::Approx(0.0));
    CHECK(sim(c, l, 2, 0, 1, Side::Left, p) == doctest::Approx(2.5));
}

TEST_CASE("MatchParams validation") {
    MatchParams p;
    CHECK(p.levels() == 17);
    p.precision = 3;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p.precision = 2;
    p.d_max = 0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
}
