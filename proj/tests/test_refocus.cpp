#include <doctest.h>

#include <cmath>

#include "hlf/refocus.hpp"
#include "hlf/resample.hpp"
#include "hlf/synth.hpp"
#include "test_util.hpp"

using namespace hlf;
using testutil::random_image;

namespace {

LightField identical_field(int U, int V, const Image& img) {
    LightField lf(U, V);
    for (auto& v : lf.views) v = img;
    return lf;
}

// single fronto-parallel plane filling the frame; per-step disparity delta
LightField planar_field(int U, int V, int h, int w, double delta_px) {
    SceneSpec scene;
    scene.focal_px = 1000.0;
    scene.background = smooth_noise(h, w, 1, 99, 1);
    scene.background_depth_m = 1.0;
    scene.planes.push_back({0.5, smooth_noise(1, 1, 1, 1), -10.0, -10.0});  // dummy near plane off-frame
    RigSpec rig;
    rig.angular_rows = U;
    rig.angular_cols = V;
    rig.step_baseline_m = delta_px * scene.background_depth_m / scene.focal_px;
    rig.lr_factor = 1;
    rig.hr_height = h;
    rig.hr_width = w;
    return synth_hybrid_capture(scene, rig).lr;
}

}  // namespace

TEST_CASE("refocus with zero slope is the mean of views") {
    LightField lf(3, 3);
    for (int i = 0; i < 9; ++i) lf.views[i] = Image(6, 6, 1, i / 10.0f);
    RefocusParams p;
    const Image out = refocus(lf, p);
    float mean = 0.0f;
    for (int i = 0; i < 9; ++i) mean += i / 10.0f;
    mean /= 9.0f;
    for (float v : out.data) CHECK(v == doctest::Approx(mean).epsilon(1e-6));
}

TEST_CASE("refocus of a single view returns it for any slope") {
    LightField lf(1, 1);
    lf.view(0, 0) = random_image(8, 8, 3, 1);
    RefocusParams p;
    p.slope = 3.7f;
    CHECK(refocus(lf, p).data == lf.view(0, 0).data);
}

TEST_CASE("refocus rejects an empty mask") {
    LightField lf(2, 2);
    for (auto& v : lf.views) v = Image(4, 4, 1, 0.5f);
    RefocusParams p;
    p.mask.assign(4, false);
    CHECK_THROWS_AS(refocus(lf, p), Error);
}

TEST_CASE("refocus mean intensity is stable under boundary normalization") {
    const LightField lf = planar_field(5, 5, 48, 48, 1.0);
    RefocusParams p;
    p.slope = 1.0f;
    const Image out = refocus(lf, p);
    double m_out = 0.0, m_views = 0.0;
    for (float v : out.data) m_out += v;
    m_out /= out.data.size();
    for (const Image& view : lf.views) {
        double m = 0.0;
        for (float v : view.data) m += v;
        m_views += m / view.data.size();
    }
    m_views /= lf.views.size();
    CHECK(std::abs(m_out - m_views) <= 2e-3);
}

TEST_CASE("sharpness peaks at the oracle slope") {
    const LightField lf = planar_field(7, 7, 64, 64, 1.0);
    const double peak = sharpness_vol(refocus(lf, RefocusParams{1.0f, {}, true}));
    const double off1 = sharpness_vol(refocus(lf, RefocusParams{-1.0f, {}, true}));
    const double off2 = sharpness_vol(refocus(lf, RefocusParams{3.0f, {}, true}));
    CHECK(peak >= 2.0 * off1);
    CHECK(peak >= 2.0 * off2);
}

TEST_CASE("epi slicing shapes and content") {
    LightField lf(3, 5);
    for (int u = 0; u < 3; ++u)
        for (int v = 0; v < 5; ++v) lf.view(u, v) = random_image(6, 7, 1, 50 + u * 5 + v);

    const Image epih = epi_horizontal(lf, 2);
    CHECK(epih.height == 5);  // V rows
    CHECK(epih.width == 7);
    for (int v = 0; v < 5; ++v)
        for (int x = 0; x < 7; ++x)
            CHECK(epih.at(v, x) == lf.view(lf.center_row(), v).at(2, x));

    const Image epiv = epi_vertical(lf, 3);
    CHECK(epiv.height == 3);  // U rows
    CHECK(epiv.width == 6);
    for (int u = 0; u < 3; ++u)
        for (int y = 0; y < 6; ++y)
            CHECK(epiv.at(u, y) == lf.view(u, lf.center_col()).at(y, 3));

    CHECK_THROWS_AS(epi_horizontal(lf, 6, 0), Error);
    CHECK_THROWS_AS(epi_vertical(lf, 7, 0), Error);
}

TEST_CASE("identical views give constant-stripe EPIs") {
    const Image img = random_image(5, 9, 1, 3);
    const LightField lf = identical_field(1, 4, img);
    const Image epi = epi_horizontal(lf, 2, 0);
    for (int v = 1; v < 4; ++v)
        for (int x = 0; x < 9; ++x) CHECK(epi.at(v, x) == epi.at(0, x));
}

TEST_CASE("epi extraction is lossless slicing") {
    LightField lf(3, 3);
    for (int i = 0; i < 9; ++i) lf.views[i] = random_image(4, 5, 1, 70 + i);
    // reassemble every view row from the horizontal EPI stack
    for (int u = 0; u < 3; ++u)
        for (int y = 0; y < 4; ++y) {
            const Image epi = epi_horizontal(lf, y, u);
            for (int v = 0; v < 3; ++v)
                for (int x = 0; x < 5; ++x) CHECK(epi.at(v, x) == lf.view(u, v).at(y, x));
        }
}

TEST_CASE("epi line slope matches the per-step disparity") {
    const double delta = 1.5;
    const LightField lf = planar_field(1, 9, 48, 96, delta);
    const Image epi = epi_horizontal(lf, 24, 0);
    // track the brightest feature of the center row across angular rows
    // and fit a line: slope should be ~delta px per angular step
    const int v0 = 4;
    int x_peak = 0;
    for (int x = 8; x < 88; ++x)
        if (epi.at(v0, x) > epi.at(v0, x_peak)) x_peak = x;
    double sum_uv = 0.0, sum_uu = 0.0;
    for (int v = 0; v < 9; ++v) {
        // refine peak around the predicted location by local search
        int best = std::max(0, std::min(95, x_peak + static_cast<int>(std::lround(delta * (v - v0)))));
        for (int dx = -2; dx <= 2; ++dx) {
            const int x = std::max(0, std::min(95, best + dx));
            if (epi.at(v, x) > epi.at(v, best)) best = x;
        }
        sum_uv += (v - v0) * (best - x_peak);
        sum_uu += (v - v0) * (v - v0);
    }
    const double slope = sum_uv / sum_uu;
    CHECK(slope == doctest::Approx(delta).epsilon(0.25));
}

TEST_CASE("sharpness_vol basics") {
    CHECK(sharpness_vol(Image(8, 8, 1, 0.5f)) == doctest::Approx(0.0));

    Image checker(8, 8, 1);
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x) checker.at(y, x) = ((x + y) % 2) ? 1.0f : 0.0f;
    CHECK(sharpness_vol(checker) > 0.0);

    const Image tex = testutil::analytic_image(32, 32);
    CHECK(sharpness_vol(tex) > sharpness_vol(gaussian5(gaussian5(tex))));
}
