#pragma once

#include <vector>

#include "hlf/image.hpp"

namespace hlf {

struct OcclusionParams {
    float threshold = 0.175f;  // intensity units on [0,1]
    int dilate_radius = 0;     // optional mask cleanup, off by default
};

// mask(x) = true iff max over channels |enhanced - lr_up| > threshold
// (strict inequality).
std::vector<uint8_t> occlusion_mask(const Image& enhanced, const Image& lr_up,
                                    const OcclusionParams& params);

// lr_up on masked pixels, enhanced elsewhere.
Image occlusion_fill(const Image& enhanced, const Image& lr_up,
                     const std::vector<uint8_t>& mask);

}  // namespace hlf
