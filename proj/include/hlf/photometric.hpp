#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "hlf/image.hpp"

namespace hlf {

// Per-channel 256-entry lookup mapping source intensity (binned) to a
// target intensity in [0,1]; monotone non-decreasing per channel.
struct IntensityMatchFunction {
    std::vector<std::array<float, 256>> luts;  // one per channel
    int channels() const { return static_cast<int>(luts.size()); }
};

// 256-bin histogram of one channel; bin = min(floor(v * 256), 255).
std::array<uint64_t, 256> histogram256(const Image& img, int channel);

// Classic CDF matching: lut[i] = (j* + 0.5) / 256 where j* is the
// smallest target bin with CDF_target >= CDF_source(i), then a running
// maximum enforces monotonicity.
IntensityMatchFunction imf_estimate(const Image& source, const Image& target);

// Apply with linear interpolation between adjacent lut entries.
Image imf_apply(const Image& img, const IntensityMatchFunction& imf);

}  // namespace hlf
