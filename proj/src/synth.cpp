#include "hlf/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hlf/resample.hpp"

namespace hlf {

namespace {

void check_scene(const SceneSpec& scene) {
    if (scene.planes.empty())
        throw Error(ErrorCode::BadArgument, "scene: at least one plane required");
    double prev = 0.0;
    for (const ScenePlane& p : scene.planes) {
        if (p.depth_m <= prev)
            throw Error(ErrorCode::BadArgument, "scene: depths must be positive and increasing");
        prev = p.depth_m;
    }
    if (scene.focal_px <= 0.0)
        throw Error(ErrorCode::BadArgument, "scene: focal length must be positive");
}

}  // namespace

RenderedView render_view(const SceneSpec& scene, double offset_x_m, double offset_y_m,
                         int height, int width) {
    check_scene(scene);
    const int C = scene.background.empty() ? scene.planes[0].texture.channels
                                           : scene.background.channels;
    RenderedView out;
    out.image = Image(height, width, C);
    const size_t n = static_cast<size_t>(height) * width;
    out.disparity_px.assign(n, 0.0f);
    out.depth_m.assign(n, 0.0f);
    out.plane_index.assign(n, -1);

    const double f = scene.focal_px;

    // background
    {
        const double z = scene.background_depth_m;
        const double sx = f * offset_x_m / z;
        const double sy = f * offset_y_m / z;
        for (int y = 0; y < height; ++y)
            for (int x = 0; x < width; ++x) {
                const size_t i = static_cast<size_t>(y) * width + x;
                if (!scene.background.empty()) {
                    float px[3];
                    sample_bilinear_all(scene.background, static_cast<float>(x - sx),
                                        static_cast<float>(y - sy), px);
                    for (int c = 0; c < C; ++c) out.image.at(y, x, c) = px[c];
                }
                out.disparity_px[i] = static_cast<float>(sx);
                out.depth_m[i] = static_cast<float>(z);
            }
    }

    // planes, back to front (list is near-first)
    for (int k = static_cast<int>(scene.planes.size()) - 1; k >= 0; --k) {
        const ScenePlane& p = scene.planes[k];
        const double sx = f * offset_x_m / p.depth_m;
        const double sy = f * offset_y_m / p.depth_m;
        const double px0 = p.x0 + sx;
        const double py0 = p.y0 + sy;
        const int xs = std::max(0, static_cast<int>(std::ceil(px0)));
        const int xe = std::min(width - 1, static_cast<int>(std::floor(px0 + p.texture.width - 1)));
        const int ys = std::max(0, static_cast<int>(std::ceil(py0)));
        const int ye = std::min(height - 1, static_cast<int>(std::floor(py0 + p.texture.height - 1)));
        float px[3];
        for (int y = ys; y <= ye; ++y)
            for (int x = xs; x <= xe; ++x) {
                sample_bilinear_all(p.texture, static_cast<float>(x - px0),
                                    static_cast<float>(y - py0), px);
                const size_t i = static_cast<size_t>(y) * width + x;
                for (int c = 0; c < C; ++c) out.image.at(y, x, c) = px[c];
                out.disparity_px[i] = static_cast<float>(sx);
                out.depth_m[i] = static_cast<float>(p.depth_m);
                out.plane_index[i] = static_cast<int16_t>(k);
            }
    }
    return out;
}

HybridCapture synth_hybrid_capture(const SceneSpec& scene, const RigSpec& rig) {
    check_scene(scene);
    if (rig.step_baseline_m <= 0.0 || rig.hr_offset_m <= 0.0 || rig.lr_factor < 1)
        throw Error(ErrorCode::BadArgument, "rig: invalid parameters");
    if (rig.hr_height % rig.lr_factor != 0 || rig.hr_width % rig.lr_factor != 0)
        throw Error(ErrorCode::BadArgument, "rig: hr dims must be divisible by lr_factor");

    const int U = rig.angular_rows, V = rig.angular_cols;
    const int u0 = U / 2, v0 = V / 2;

    HybridCapture cap;
    cap.rig = rig;
    cap.gt_hr = LightField(U, V);
    cap.lr = LightField(U, V);
    for (int u = 0; u < U; ++u)
        for (int v = 0; v < V; ++v) {
            const double ox = (v - v0) * rig.step_baseline_m;
            const double oy = (u - u0) * rig.step_baseline_m;
            RenderedView rv = render_view(scene, ox, oy, rig.hr_height, rig.hr_width);
            if (u == u0 && v == v0) cap.center = rv;
            cap.lr.view(u, v) = box_downsample(rv.image, rig.lr_factor);
            cap.gt_hr.view(u, v) = std::move(rv.image);
        }
    cap.hr = render_view(scene, rig.hr_offset_m, 0.0, rig.hr_height, rig.hr_width).image;
    return cap;
}

double psnr(const Image& a, const Image& b) {
    if (!a.same_shape(b))
        throw Error(ErrorCode::DimensionMismatch, "psnr: dims differ");
    double mse = 0.0;
    for (size_t i = 0; i < a.data.size(); ++i) {
        const double d = a.data[i] - b.data[i];
        mse += d * d;
    }
    mse /= static_cast<double>(a.data.size());
    if (mse <= 0.0) return 99.0;
    return std::min(99.0, 10.0 * std::log10(1.0 / mse));
}

Image smooth_noise(int height, int width, int channels, uint32_t seed, int blur_passes) {
    Image img(height, width, channels);
    std::mt19937 rng(seed);
    std::uniform_real_distribution<float> dist(0.0f, 1.0f);
    for (float& v : img.data) v = dist(rng);
    for (int i = 0; i < blur_passes; ++i) img = gaussian5(img);
    // renormalize per channel to [0.1, 0.9] so textures keep contrast
    for (int c = 0; c < channels; ++c) {
        float lo = 1e9f, hi = -1e9f;
        for (size_t i = c; i < img.data.size(); i += channels) {
            lo = std::min(lo, img.data[i]);
            hi = std::max(hi, img.data[i]);
        }
        const float span = hi > lo ? hi - lo : 1.0f;
        for (size_t i = c; i < img.data.size(); i += channels)
            img.data[i] = 0.1f + 0.8f * (img.data[i] - lo) / span;
    }
    return img;
}

SceneSpec default_scene(int height, int width, int channels, double focal_px, uint32_t seed) {
    SceneSpec scene;
    scene.focal_px = focal_px;
    scene.background = smooth_noise(height, width, channels, seed);
    scene.background_depth_m = 3.4;

    ScenePlane near;
    near.depth_m = 2.0;
    near.texture = smooth_noise(height / 4, width / 4, channels, seed + 1);
    near.x0 = width * 0.15;
    near.y0 = height * 0.55;

    ScenePlane mid;
    mid.depth_m = 2.6;
    mid.texture = smooth_noise(height / 3, width / 3, channels, seed + 2);
    mid.x0 = width * 0.55;
    mid.y0 = height * 0.2;

    scene.planes = {near, mid};
    return scene;
}

SceneSpec staircase_scene(int height, int width, int channels, double focal_px,
                          const std::vector<double>& depths_m, uint32_t seed) {
    if (depths_m.empty())
        throw Error(ErrorCode::BadArgument, "staircase_scene: empty depth list");
    SceneSpec scene;
    scene.focal_px = focal_px;
    scene.background = smooth_noise(height, width, channels, seed);
    scene.background_depth_m = depths_m.back() * 2.0;

    const int n = static_cast<int>(depths_m.size());
    const int bw = width / (n + 1);
    const int bh = height / 3;
    for (int k = 0; k < n; ++k) {
        ScenePlane p;
        p.depth_m = depths_m[k];
        p.texture = smooth_noise(bh, bw, channels, seed + 10 + static_cast<uint32_t>(k));
        p.x0 = bw * 0.5 + k * bw;
        p.y0 = height / 3.0;
        scene.planes.push_back(std::move(p));
    }
    return scene;
}

}  // namespace hlf
