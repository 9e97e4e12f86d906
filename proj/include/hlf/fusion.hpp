#pragma once

#include <cstdint>
#include <vector>

#include "hlf/flow.hpp"
#include "hlf/image.hpp"

namespace hlf {

enum class FusionMethod { AlphaBlend, Wavelet };

struct FusionParams {
    FusionMethod method = FusionMethod::AlphaBlend;
    float hr_weight = 0.55f;
    float lr_weight = 0.45f;
    int wavelet_levels = 2;
};

// Orthonormal 2D Haar decomposition. Odd dimensions are evened by edge
// replication at each level; the inverse crops back.
struct SubbandLevel {
    int orig_height = 0;  // input dims at this level, pre-padding
    int orig_width = 0;
    Image lh, hl, hh;
};

struct SubbandPyramid {
    std::vector<SubbandLevel> levels;  // fine to coarse
    Image ll;                          // deepest approximation
};

SubbandPyramid dwt_haar2(const Image& img, int levels);
Image idwt_haar2(const SubbandPyramid& p);

// out = w_hr * hr_warped + w_lr * lr_up, clamped to [0,1].
Image fuse_alpha(const Image& hr_warped, const Image& lr_up, const FusionParams& params);

// Deepest LL from lr_up, every detail subband from hr_warped; inverse
// transform per channel, clamp to [0,1].
Image fuse_wavelet(const Image& hr_warped, const Image& lr_up, const FusionParams& params);

Image fuse(const Image& hr_warped, const Image& lr_up, const FusionParams& params);

struct EnhanceOptions {
    FlowParams flow;
    FusionParams fusion;
    bool apply_imf = true;       // photometric-match hr toward the center view
    bool apply_vignette = false; // scale views by vignette gains before flow
    int threads = 1;             // per-view fan-out; output is thread-count invariant
};

struct EnhanceResult {
    LightField enhanced;          // at hr resolution, same angular dims
    LightField upsampled;         // bicubic-upsampled input views (the fusion baseline)
    uint64_t intra_flow_estimates = 0;
    uint64_t cross_flow_estimates = 0;
};

// The full resolution-enhancement pipeline: photometric matching,
// per-view bicubic upsampling, one cross-camera flow plus four
// center-to-extreme flows interpolated across the angular grid,
// backward warping of hr onto every view, then fusion.
EnhanceResult enhance_lightfield(const LightField& lf, const Image& hr,
                                 const EnhanceOptions& opt);

}  // namespace hlf
