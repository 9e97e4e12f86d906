#include "hlf/occlusion.hpp"

#include <algorithm>
#include <cmath>

namespace hlf {

std::vector<uint8_t> occlusion_mask(const Image& enhanced, const Image& lr_up,
                                    const OcclusionParams& params) {
    if (!enhanced.same_shape(lr_up))
        throw Error(ErrorCode::DimensionMismatch, "occlusion_mask: dims differ");
    const size_t n = static_cast<size_t>(enhanced.height) * enhanced.width;
    std::vector<uint8_t> mask(n, 0);
    for (size_t i = 0; i < n; ++i) {
        float mx = 0.0f;
        for (int c = 0; c < enhanced.channels; ++c)
            mx = std::max(mx, std::abs(enhanced.data[i * enhanced.channels + c] -
                                       lr_up.data[i * enhanced.channels + c]));
        mask[i] = mx > params.threshold ? 1 : 0;
    }
    if (params.dilate_radius > 0) {
        const int H = enhanced.height, W = enhanced.width, r = params.dilate_radius;
        std::vector<uint8_t> out(n, 0);
        for (int y = 0; y < H; ++y)
            for (int x = 0; x < W; ++x) {
                uint8_t v = 0;
                for (int dy = -r; dy <= r && !v; ++dy)
                    for (int dx = -r; dx <= r && !v; ++dx) {
                        const int yy = y + dy, xx = x + dx;
                        if (yy >= 0 && yy < H && xx >= 0 && xx < W)
                            v = mask[static_cast<size_t>(yy) * W + xx];
                    }
                out[static_cast<size_t>(y) * W + x] = v;
            }
        mask = std::move(out);
    }
    return mask;
}

Image occlusion_fill(const Image& enhanced, const Image& lr_up,
                     const std::vector<uint8_t>& mask) {
    if (!enhanced.same_shape(lr_up))
        throw Error(ErrorCode::DimensionMismatch, "occlusion_fill: dims differ");
    const size_t n = static_cast<size_t>(enhanced.height) * enhanced.width;
    if (mask.size() != n)
        throw Error(ErrorCode::DimensionMismatch, "occlusion_fill: mask size mismatch");
    Image out = enhanced;
    for (size_t i = 0; i < n; ++i)
        if (mask[i])
            for (int c = 0; c < enhanced.channels; ++c)
                out.data[i * enhanced.channels + c] = lr_up.data[i * enhanced.channels + c];
    return out;
}

}  // namespace hlf
