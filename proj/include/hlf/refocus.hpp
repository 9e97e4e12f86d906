#pragma once

#include <vector>

#include "hlf/image.hpp"

namespace hlf {

struct RefocusParams {
    float slope = 0.0f;            // pixels per angular step, both axes
    std::vector<bool> mask;        // row-major U x V inclusion; empty = all views
    bool boundary_normalize = true;
};

// Shift-and-sum: out(x,y) averages view(u,v) sampled at
// (x + s*(v - v0), y + s*(u - u0)) over the included views. With
// boundary normalization, samples whose pre-clamp coordinate falls
// outside the view carry zero weight.
Image refocus(const LightField& lf, const RefocusParams& params);

// V x W slice: output row v is row y of view(u, v).
Image epi_horizontal(const LightField& lf, int y, int u);
Image epi_horizontal(const LightField& lf, int y);  // u = center row

// U x H slice: output row u is column x of view(u, v).
Image epi_vertical(const LightField& lf, int x, int v);
Image epi_vertical(const LightField& lf, int x);  // v = center col

// Variance of the 3x3 Laplacian response on luma; a focus metric.
double sharpness_vol(const Image& img);

}  // namespace hlf
