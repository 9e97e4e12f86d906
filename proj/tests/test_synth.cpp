#include <doctest.h>

#include <cmath>

#include "hlf/resample.hpp"
#include "hlf/synth.hpp"
#include "test_util.hpp"

using namespace hlf;

TEST_CASE("render_view at zero offset reproduces placement exactly") {
    SceneSpec scene;
    scene.focal_px = 800.0;
    scene.background = Image(32, 32, 1, 0.2f);
    scene.background_depth_m = 5.0;
    ScenePlane plane;
    plane.depth_m = 1.0;
    plane.texture = Image(8, 8, 1, 0.9f);
    plane.x0 = 10.0;
    plane.y0 = 12.0;
    scene.planes.push_back(plane);

    const RenderedView v = render_view(scene, 0.0, 0.0, 32, 32);
    CHECK(v.image.at(0, 0) == doctest::Approx(0.2f));
    CHECK(v.image.at(14, 13) == doctest::Approx(0.9f));
    CHECK(v.plane_index[0] == -1);
    CHECK(v.plane_index[14 * 32 + 13] == 0);
    CHECK(v.depth_m[0] == doctest::Approx(5.0f));
    CHECK(v.depth_m[14 * 32 + 13] == doctest::Approx(1.0f));
    CHECK(v.disparity_px[0] == doctest::Approx(0.0f));
}

TEST_CASE("horizontal offset shifts a plane by f*offset/z pixels") {
    SceneSpec scene;
    scene.focal_px = 1000.0;
    scene.background = Image(40, 40, 1, 0.1f);
    scene.background_depth_m = 1e6;
    ScenePlane plane;
    plane.depth_m = 2.0;
    plane.texture = Image(6, 6, 1, 0.8f);
    plane.x0 = 10.0;
    plane.y0 = 10.0;
    scene.planes.push_back(plane);

    const double offset = 0.008;  // 1000 * 0.008 / 2 = 4 px
    const RenderedView v = render_view(scene, offset, 0.0, 40, 40);
    CHECK(v.image.at(12, 12) == doctest::Approx(0.1f));
    CHECK(v.image.at(12, 16) == doctest::Approx(0.8f));
    CHECK(v.disparity_px[12 * 40 + 16] == doctest::Approx(4.0f));
    CHECK(v.plane_index[12 * 40 + 16] == 0);

    const RenderedView vy = render_view(scene, 0.0, offset, 40, 40);
    CHECK(vy.image.at(16, 12) == doctest::Approx(0.8f));
    CHECK(vy.image.at(12, 12) == doctest::Approx(0.1f));
}

TEST_CASE("nearer planes occlude farther ones") {
    SceneSpec scene;
    scene.focal_px = 500.0;
    scene.background = Image(24, 24, 1, 0.1f);
    scene.background_depth_m = 10.0;
    scene.planes.push_back({0.5, Image(6, 6, 1, 0.9f), 9.0, 9.0});
    scene.planes.push_back({1.0, Image(12, 12, 1, 0.5f), 6.0, 6.0});

    const RenderedView v = render_view(scene, 0.0, 0.0, 24, 24);
    CHECK(v.image.at(12, 12) == doctest::Approx(0.9f));
    CHECK(v.plane_index[12 * 24 + 12] == 0);
    CHECK(v.image.at(7, 7) == doctest::Approx(0.5f));
    CHECK(v.plane_index[7 * 24 + 7] == 1);
    CHECK(v.image.at(2, 2) == doctest::Approx(0.1f));
}

TEST_CASE("render_view validates its scene") {
    SceneSpec scene;
    scene.background = Image(8, 8, 1, 0.5f);
    scene.background_depth_m = 2.0;
    scene.planes.push_back({1.0, Image(2, 2, 1, 0.5f), 0.0, 0.0});
    scene.planes.push_back({0.5, Image(2, 2, 1, 0.5f), 0.0, 0.0});  // not near-first
    CHECK_THROWS_AS(render_view(scene, 0.0, 0.0, 8, 8), Error);

    SceneSpec bad;
    bad.background = Image(8, 8, 1, 0.5f);
    bad.background_depth_m = 2.0;
    bad.planes.push_back({-1.0, Image(2, 2, 1, 0.5f), 0.0, 0.0});
    CHECK_THROWS_AS(render_view(bad, 0.0, 0.0, 8, 8), Error);
}

TEST_CASE("synth_hybrid_capture dimensions and ground truth") {
    const SceneSpec scene = default_scene(64, 64, 3, 400.0);
    RigSpec rig;
    rig.angular_rows = 3;
    rig.angular_cols = 5;
    rig.lr_factor = 4;
    rig.hr_height = 64;
    rig.hr_width = 64;
    rig.step_baseline_m = 0.001;
    rig.hr_offset_m = 0.01;

    const HybridCapture cap = synth_hybrid_capture(scene, rig);
    CHECK(cap.lr.angular_rows == 3);
    CHECK(cap.lr.angular_cols == 5);
    CHECK(cap.lr.view(0, 0).height == 16);
    CHECK(cap.lr.view(0, 0).width == 16);
    CHECK(cap.gt_hr.view(0, 0).height == 64);
    CHECK(cap.hr.height == 64);
    CHECK(cap.hr.channels == 3);

    // center of the LR grid equals the zero-offset ground truth downsampled
    const Image ds = box_downsample(cap.center.image, 4);
    const Image& c = cap.lr.view(1, 2);
    for (size_t i = 0; i < ds.data.size(); ++i)
        CHECK(std::abs(c.data[i] - ds.data[i]) <= 1e-6f);

    // gt center view matches the stored RenderedView image exactly
    CHECK(cap.gt_hr.view(1, 2).data == cap.center.image.data);
}

TEST_CASE("capture rejects dimensions not divisible by the factor") {
    const SceneSpec scene = default_scene(30, 30, 1, 400.0);
    RigSpec rig;
    rig.hr_height = 30;
    rig.hr_width = 30;
    rig.lr_factor = 4;
    CHECK_THROWS_AS(synth_hybrid_capture(scene, rig), Error);
}

TEST_CASE("psnr") {
    const Image a = testutil::random_image(16, 16, 1, 1);
    CHECK(psnr(a, a) == doctest::Approx(99.0));
    CHECK(psnr(Image(4, 4, 1, 0.0f), Image(4, 4, 1, 0.5f)) ==
          doctest::Approx(10.0 * std::log10(1.0 / 0.25)));
    CHECK(psnr(Image(4, 4, 1, 0.0f), Image(4, 4, 1, 1.0f)) == doctest::Approx(0.0));
    CHECK_THROWS_AS(psnr(a, Image(4, 4, 1)), Error);
}

TEST_CASE("smooth_noise is deterministic, seed-sensitive, and in range") {
    const Image a = smooth_noise(32, 32, 1, 42);
    const Image b = smooth_noise(32, 32, 1, 42);
    const Image c = smooth_noise(32, 32, 1, 43);
    CHECK(a.data == b.data);
    CHECK(a.data != c.data);
    float lo = 1.0f, hi = 0.0f;
    for (float v : a.data) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    CHECK(lo >= 0.1f - 1e-6f);
    CHECK(hi <= 0.9f + 1e-6f);
    CHECK(hi - lo > 0.5f);  // renormalized to span the band
}

TEST_CASE("default_scene and staircase_scene structure") {
    const SceneSpec d = default_scene(48, 48, 1, 500.0);
    REQUIRE(d.planes.size() == 2);
    CHECK(d.planes[0].depth_m == doctest::Approx(2.0));
    CHECK(d.planes[1].depth_m == doctest::Approx(2.6));
    CHECK(d.background_depth_m == doctest::Approx(3.4));
    CHECK(d.background.height == 48);

    const SceneSpec s = staircase_scene(64, 96, 1, 500.0, {0.4, 0.8, 1.2, 1.6});
    REQUIRE(s.planes.size() == 4);
    for (size_t i = 1; i < 4; ++i) CHECK(s.planes[i].depth_m > s.planes[i - 1].depth_m);
    CHECK_THROWS_AS(staircase_scene(64, 96, 1, 500.0, {}), Error);
}

TEST_CASE("rendered disparity is constant on each plane and matches fb/z") {
    const SceneSpec scene = default_scene(48, 48, 1, 600.0);
    const double b = 0.004;
    const RenderedView v = render_view(scene, b, 0.0, 48, 48);
    for (int i = 0; i < 48 * 48; ++i) {
        const double z = v.depth_m[i];
        CHECK(v.disparity_px[i] == doctest::Approx(600.0 * b / z).epsilon(1e-5));
    }
}
