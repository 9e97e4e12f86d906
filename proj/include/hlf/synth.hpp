#pragma once

#include <cstdint>
#include <vector>

#include "hlf/depth.hpp"
#include "hlf/image.hpp"

namespace hlf {

// Fronto-parallel textured plane. Placement is the top-left corner of
// the texture in reference-view pixels (zero lateral camera offset).
struct ScenePlane {
    double depth_m = 1.0;
    Image texture;
    double x0 = 0.0;
    double y0 = 0.0;
};

// Layered scene: background plane filling the frame plus finite planes
// ordered near-first with strictly increasing depths.
struct SceneSpec {
    std::vector<ScenePlane> planes;  // near-first
    double focal_px = 1000.0;
    Image background;                // sized to the render target
    double background_depth_m = 1e6;
};

// Camera rig: U x V angular grid with per-step baseline, an offset
// high-resolution camera, and the LR downsample factor.
struct RigSpec {
    int angular_rows = 9;
    int angular_cols = 9;
    double step_baseline_m = 0.0005;  // delta-b between adjacent views
    double hr_offset_m = 0.04;        // B, lateral offset of the HR camera
    int lr_factor = 4;                // k
    int hr_height = 384;
    int hr_width = 384;
};

struct RenderedView {
    Image image;
    std::vector<float> disparity_px;   // horizontal shift vs the zero-offset camera
    std::vector<float> depth_m;        // per-pixel plane depth
    std::vector<int16_t> plane_index;  // -1 = background, else index into planes
};

// Painter's-order renderer: each plane is drawn shifted by
// f * offset / z pixels (positive offset shifts content right/down),
// back to front, with bilinear sub-pixel texture sampling.
RenderedView render_view(const SceneSpec& scene, double offset_x_m, double offset_y_m,
                         int height, int width);

struct HybridCapture {
    LightField lr;          // box-downsampled by k
    LightField gt_hr;       // ground-truth full-resolution views
    Image hr;               // regular camera image at offset B
    RenderedView center;    // ground truth for the zero-offset center view
    RigSpec rig;
};

// Renders every grid view at HR resolution, box-downsamples them by k,
// and renders the offset HR camera image. All views are rectified by
// construction.
HybridCapture synth_hybrid_capture(const SceneSpec& scene, const RigSpec& rig);

// 10 log10(1 / MSE) on unit-interval images; identical images report
// the 99 dB cap.
double psnr(const Image& a, const Image& b);

// Deterministic band-limited noise texture (blurred uniform noise,
// renormalized to [0.1, 0.9]).
Image smooth_noise(int height, int width, int channels, uint32_t seed, int blur_passes = 2);

// Default scene: textured background at 3.4 m plus two textured
// blocks at 2.0 m and 2.6 m (depths chosen so the default rig's
// cross-camera disparities stay inside the flow solver's
// coarse-to-fine convergence range).
SceneSpec default_scene(int height, int width, int channels, double focal_px,
                        uint32_t seed = 7);

// Lego-staircase scene: a row of textured blocks at the given depths.
SceneSpec staircase_scene(int height, int width, int channels, double focal_px,
                          const std::vector<double>& depths_m, uint32_t seed = 11);

}  // namespace hlf
