#pragma once

#include <vector>

#include "hlf/image.hpp"

namespace hlf {

// Idealized rectangular lenslet layout. Each lenslet covers a
// pixels_y x pixels_x block of the raw mosaic; pixel (u,v) inside the
// block belongs to sub-aperture view (u,v).
struct LensletGrid {
    int lenslets_y = 0;
    int lenslets_x = 0;
    int pixels_y = 0;  // = U
    int pixels_x = 0;  // = V
    int offset_y = 0;
    int offset_x = 0;
};

// Interleave a light field back into a raw mosaic (inverse of decoding).
Image mux_rect_lenslet(const LightField& lf, const LensletGrid& grid);

// Extract sub-aperture views from a raw mosaic.
LightField decode_rect_lenslet(const Image& raw, const LensletGrid& grid);

// gain(u,v) = mean_luma(center) / max(mean_luma(view), eps), eps = 1e-4.
// The center view's gain is exactly 1. Row-major U x V vector.
std::vector<float> vignette_gain(const LightField& lf);

}  // namespace hlf
