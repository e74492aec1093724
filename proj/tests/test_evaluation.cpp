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
#include "tristereo/evaluation.hpp"
#include "tristereo/occlusion.hpp"
#include "tristereo/scenegen.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace tristereo;

TEST_CASE("bad-pixel rates on trivial inputs") {
    const DisparityMap gt(6, 4, 1, 3);
    const EvalMasks masks{PixelMask(6, 4, true), PixelMask(6, 4, true), PixelMask(6, 4, true)};
    const auto same = bad_pixel_rates(gt, gt, masks);
    CHECK(same.nonocc == 0.0);
    CHECK(same.all == 0.0);
    CHECK(same.disc == 0.0);
    const auto off = bad_pixel_rates(DisparityMap(6, 4, 1, 5), gt, masks);
    CHECK(off.nonocc == 100.0);
    CHECK(off.all == 100.0);
}

TEST_CASE("hand-built 4x4 with three bad pixels of twelve") {
    DisparityMap gt(4, 4, 1, 2);
    gt.invalidate(0, 0);  // unknown ground truth is excluded
    PixelMask mask(4, 4, true);
    mask.set(1, 0, false);
    mask.set(2, 0, false);
    mask.set(3, 0, false);  // 16 - 1 unknown - 3 masked = 12
    DisparityMap est = gt;
    est.set(0, 0, 9);        // not counted
    est.set(1, 0, 9);        // masked out
    est.set(0, 1, 4);        // bad, |2| > 1
    est.invalidate(1, 1);    // bad, no estimate
    est.set(2, 2, 0);        // bad
    est.set(3, 3, 3);        // |1| is not > 1
    CHECK(bad_pixel_rate(est, gt, mask) == doctest::Approx(25.0));
}

TEST_CASE("bad-pixel rate compares in pixel units across precisions") {
    const DisparityMap gt(2, 1, 4, std::vector<std::int32_t>{8, 8});    // 2 px
    const DisparityMap est(2, 1, 4, std::vector<std::int32_t>{12, 13});  // 3 and 3.25 px
    CHECK(bad_pixel_rate(est, gt, PixelMask(2, 1, true)) == doctest::Approx(50.0));
    CHECK(bad_pixel_rate(est, gt, PixelMask(2, 1, false)) == 0.0);
    CHECK_THROWS_AS(bad_pixel_rate(est, DisparityMap(3, 1, 4, 0), PixelMask(2, 1, true)), ConfigError);
}

TEST_CASE("discontinuity mask grows around depth edges") {
    DisparityMap gt(10, 1, 1, 1);
    for (int x = 5; x < 10; ++x) gt.set(x, 0, 6);
    const auto m = discontinuity_mask(gt, 1.0, 2);
    for (int x = 0; x < 10; ++x) {
        CHECK(m.at(x, 0) == (x >= 2 && x <= 7));
    }
}

TEST_CASE("PSNR against calculator values") {
    const LumaImage ref(8, 8, 100.0f);
    CHECK(psnr_luma(ref, ref) == kInfinitePsnr);
    CHECK(std::abs(psnr_luma(LumaImage(8, 8, 101.0f), ref) - 48.13) < 0.01);
    LumaImage half = ref;
    for (int y = 0; y < 4; ++y) {
        for (int x = 0; x < 8; ++x) half.set(x, y, 102.0f);
    }
    CHECK(std::abs(psnr_luma(half, ref) - 45.12) < 0.01);
    CHECK(psnr_luma(half, ref) == psnr_luma(ref, half));
    const auto s = summarize_psnr({40.0, 42.0});
    CHECK(s.psnr_luma == 41.0);
    CHECK(s.frames == 2);
    CHECK(s.per_frame.size() == 2);
}

TEST_CASE("static scene synthesis returns the input") {
    std::mt19937 rng(14);
    const auto a = oracle::random_image(12, 5, rng);
    const DisparityMap zero(12, 5, 1, 0);
    for (double alpha : {0.0, 0.3, 0.5, 1.0}) {
        CHECK(synthesize_view(a, zero, a, zero, alpha) == a);
    }
}

TEST_CASE("half-way synthesis of a shifted ramp") {
    const int w = 40, d = 4;
    std::vector<float> av(w), bv(w);
    for (int x = 0; x < w; ++x) {
        bv[x] = static_cast<float>(3 * x + 20);
        av[x] = static_cast<float>(3 * x + 8);  // B shifted right by d
    }
    const LumaImage a(w, 1, av), b(w, 1, bv);
    const DisparityMap disp(w, 1, 1, d);
    const auto v = synthesize_view(a, disp, b, disp, 0.5);
    for (int x = d / 2; x < w - d / 2; ++x) {
        CHECK(v.at(x, 0) == doctest::Approx(3.0 * x + 14.0));
    }
}

TEST_CASE("holes fill from the smaller-disparity neighbour") {
    const LumaImage a(3, 1, std::vector<float>{10, 50, 90});
    DisparityMap da(3, 1, 1, std::vector<std::int32_t>{3, DisparityMap::kInvalidLevel, 1});
    const DisparityMap none(3, 1, 1);
    CHECK(synthesize_view(a, da, a, none, 0.0).at(1, 0) == 90.0f);
    da = DisparityMap(3, 1, 1, std::vector<std::int32_t>{1, DisparityMap::kInvalidLevel, 3});
    CHECK(synthesize_view(a, da, a, none, 0.0).at(1, 0) == 10.0f);
    da = DisparityMap(3, 1, 1, std::vector<std::int32_t>{2, DisparityMap::kInvalidLevel, 2});
    CHECK(synthesize_view(a, da, a, none, 0.0).at(1, 0) == 10.0f);
}

TEST_CASE("alpha zero on a hole-free warp reproduces view A") {
    std::mt19937 rng(15);
    const auto a = oracle::random_image(16, 4, rng);
    const auto b = oracle::random_image(16, 4, rng);
    const DisparityMap d(16, 4, 1, 3);
    CHECK(synthesize_view(a, d, b, d, 0.0) == a);
}

TEST_CASE("ground-truth synthesis beats random disparities") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto views = render_scene(two_layer_scene(64, 48, 2, 8, 0.0), seed);
        const auto sides = warp_to_sides(views.gt_center);
        const auto v_gt = synthesize_view(views.left, scale_disparity(sides.left, 2.0), views.right,
                                          scale_disparity(sides.right, 2.0), 0.5);
        std::mt19937 rng(static_cast<unsigned>(seed));
        std::uniform_int_distribution<int> u(0, 16);
        DisparityMap rnd(64, 48, 1, 0);
        for (int y = 0; y < 48; ++y) {
            for (int x = 0; x < 64; ++x) rnd.set(x, y, u(rng));
        }
        const auto v_rnd = synthesize_view(views.left, rnd, views.right, rnd, 0.5);
        CHECK(psnr_luma(v_gt, views.center) > psnr_luma(v_rnd, views.center));
    }
}

TEST_CASE("baseline scaling") {
    DisparityMap m(3, 1, 2, std::vector<std::int32_t>{1, 4, DisparityMap::kInvalidLevel});
    const auto s = scale_disparity(m, 2.0);
    CHECK(s.level(0, 0) == 2);
    CHECK(s.level(1, 0) == 8);
    CHECK_FALSE(s.is_valid(2, 0));
    CHECK(s.precision() == 2);
    CHECK_THROWS_AS(scale_disparity(m, 0.0), ConfigError);
}
