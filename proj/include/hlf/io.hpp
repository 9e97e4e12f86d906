#pragma once

#include <string>

#include "hlf/image.hpp"

namespace hlf {

// 8- or 16-bit PNG, 1 or 3 channels; intensities scaled to [0,1] by
// value / (2^bits - 1).
Image png_read(const std::string& path);

// 8-bit PNG output. Values are clamped to [0,1], then quantized as
// round(v * 255) with ties away from zero.
void png_write(const Image& img, const std::string& path);

// 16-bit grayscale PNG for disparity/depth visualizations; values are
// clamped to [0,1] and quantized to 0..65535.
void png_write16(const Image& img, const std::string& path);

// LFC container: magic "LFC1", six u32 LE (U, V, H, W, C, reserved=0),
// then U*V*H*W*C f32 LE ordered [u][v][row][col][channel]. Lossless.
void lfc_write(const LightField& lf, const std::string& path);
LightField lfc_read(const std::string& path);

}  // namespace hlf
