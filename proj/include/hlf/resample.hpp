#pragma once

#include "hlf/image.hpp"

namespace hlf {

// Bilinear sample at sub-pixel (x, y); coordinates clamp to the valid
// rectangle, so far out-of-bounds queries return the nearest border pixel.
float sample_bilinear(const Image& img, float x, float y, int channel);

// All-channel variant writing into out[0..channels).
void sample_bilinear_all(const Image& img, float x, float y, float* out);

// Catmull-Rom bicubic resize (a = -0.5), edge-clamped, pixel-center
// aligned: src coordinate = (dst + 0.5) * scale - 0.5.
Image resize_bicubic(const Image& img, int out_height, int out_width);

// Separable 5-tap Gaussian blur, sigma = 1.0, clamped borders.
Image gaussian5(const Image& img);

// k x k box average; height and width must be divisible by k.
Image box_downsample(const Image& img, int k);

}  // namespace hlf
