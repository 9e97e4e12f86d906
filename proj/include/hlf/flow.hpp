#pragma once

#include <atomic>
#include <string>
#include <vector>

#include "hlf/image.hpp"

namespace hlf {

// Per-pixel displacement on the source grid: source (x, y) corresponds
// to destination (x + dx(x,y), y + dy(x,y)). Pixel units.
struct FlowField {
    int height = 0;
    int width = 0;
    std::vector<float> dx;
    std::vector<float> dy;

    FlowField() = default;
    FlowField(int h, int w)
        : height(h), width(w),
          dx(static_cast<size_t>(h) * w, 0.0f),
          dy(static_cast<size_t>(h) * w, 0.0f) {}

    size_t idx(int y, int x) const { return static_cast<size_t>(y) * width + x; }
    bool same_shape(const FlowField& o) const { return height == o.height && width == o.width; }
};

struct FlowParams {
    float alpha = 0.02f;        // smoothness weight on unit-interval intensities
    float pyramid_scale = 0.5f;
    int min_level_size = 16;
    int outer_iterations = 3;   // warp/fixed-point steps per level
    int irls_iterations = 3;    // re-weighting steps per outer step
    int sor_sweeps = 30;
    float sor_omega = 1.8f;
    float charbonnier_eps = 1e-3f;
};

// Running count of flow estimations, used to verify the four-plus-one
// economy of the enhancement path.
extern std::atomic<uint64_t> g_flow_estimate_count;

// Coarse-to-fine pyramid, finest first. Each level applies a 5-tap
// Gaussian (sigma 1) before bicubic downscaling; stops once the next
// level's min dimension would drop below params.min_level_size.
std::vector<Image> pyramid(const Image& img, const FlowParams& params);

// Variational flow src -> dst: Charbonnier-robust brightness constancy
// plus alpha-weighted smoothness, coarse-to-fine IRLS with SOR sweeps.
// Inputs are converted to luma if 3-channel. Deterministic.
FlowField flow_estimate(const Image& src, const Image& dst, const FlowParams& params);

// f_ac(x) = f_ab(x) + f_bc sampled at x + f_ab(x) (bilinear, clamped).
FlowField flow_compose(const FlowField& f_ab, const FlowField& f_bc);

// Pointwise negation; a valid inverse only for small displacements.
FlowField flow_negate_approx(const FlowField& f);

// Linear interpolation of the four center->extreme flows to the flow
// center->(u,v). Extremes: left (u0,0), right (u0,V-1), top (0,v0),
// bottom (U-1,v0).
FlowField grid_interpolate(const FlowField& f_left, const FlowField& f_right,
                           const FlowField& f_top, const FlowField& f_bottom,
                           int u, int v, int angular_rows, int angular_cols);

// out(x) = img sampled at x + f(x), per channel, bilinear, clamped.
Image warp_backward(const Image& img, const FlowField& f);

struct ResidualStats {
    Image abs_diff;
    double mean = 0.0;
    double max = 0.0;
};

ResidualStats residual(const Image& a, const Image& b);

// Flow fields serialize into the LFC container as a 1x1 field with
// C=2 (dx, dy) for debugging.
void flow_write(const FlowField& f, const std::string& path);
FlowField flow_read(const std::string& path);

}  // namespace hlf
