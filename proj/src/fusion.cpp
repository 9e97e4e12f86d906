#include "hlf/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "hlf/photometric.hpp"
#include "hlf/decode.hpp"
#include "hlf/resample.hpp"

namespace hlf {

namespace {

Image replicate_pad_even(const Image& img) {
    const int H = img.height + (img.height & 1);
    const int W = img.width + (img.width & 1);
    if (H == img.height && W == img.width) return img;
    Image out(H, W, 1);
    for (int y = 0; y < H; ++y)
        for (int x = 0; x < W; ++x)
            out.at(y, x) = img.at(std::min(y, img.height - 1), std::min(x, img.width - 1));
    return out;
}

}  // namespace

SubbandPyramid dwt_haar2(const Image& img, int levels) {
    if (img.empty())
        throw Error(ErrorCode::BadArgument, "dwt_haar2: empty image");
    if (img.channels != 1)
        throw Error(ErrorCode::BadArgument, "dwt_haar2: single-channel input required");
    if (levels < 1)
        throw Error(ErrorCode::BadArgument, "dwt_haar2: levels must be >= 1");

    SubbandPyramid p;
    Image cur = img;
    for (int l = 0; l < levels; ++l) {
        SubbandLevel lev;
        lev.orig_height = cur.height;
        lev.orig_width = cur.width;
        const Image src = replicate_pad_even(cur);
        const int h2 = src.height / 2;
        const int w2 = src.width / 2;
        Image ll(h2, w2, 1);
        lev.lh = Image(h2, w2, 1);
        lev.hl = Image(h2, w2, 1);
        lev.hh = Image(h2, w2, 1);
        for (int y = 0; y < h2; ++y)
            for (int x = 0; x < w2; ++x) {
                const float a = src.at(2 * y, 2 * x);
                const float b = src.at(2 * y, 2 * x + 1);
                const float c = src.at(2 * y + 1, 2 * x);
                const float d = src.at(2 * y + 1, 2 * x + 1);
                ll.at(y, x) = 0.5f * (a + b + c + d);
                lev.lh.at(y, x) = 0.5f * (a - b + c - d);
                lev.hl.at(y, x) = 0.5f * (a + b - c - d);
                lev.hh.at(y, x) = 0.5f * (a - b - c + d);
            }
        p.levels.push_back(std::move(lev));
        cur = std::move(ll);
    }
    p.ll = std::move(cur);
    return p;
}

Image idwt_haar2(const SubbandPyramid& p) {
    if (p.levels.empty() || p.ll.empty())
        throw Error(ErrorCode::BadArgument, "idwt_haar2: malformed pyramid");
    Image cur = p.ll;
    for (int l = static_cast<int>(p.levels.size()) - 1; l >= 0; --l) {
        const SubbandLevel& lev = p.levels[l];
        if (!cur.same_shape(lev.lh))
            throw Error(ErrorCode::DimensionMismatch, "idwt_haar2: subband shape mismatch");
        Image up(cur.height * 2, cur.width * 2, 1);
        for (int y = 0; y < cur.height; ++y)
            for (int x = 0; x < cur.width; ++x) {
                const float s = cur.at(y, x);
                const float h = lev.lh.at(y, x);
                const float v = lev.hl.at(y, x);
                const float d = lev.hh.at(y, x);
                up.at(2 * y, 2 * x) = 0.5f * (s + h + v + d);
                up.at(2 * y, 2 * x + 1) = 0.5f * (s - h + v - d);
                up.at(2 * y + 1, 2 * x) = 0.5f * (s + h - v - d);
                up.at(2 * y + 1, 2 * x + 1) = 0.5f * (s - h - v + d);
            }
        if (up.height != lev.orig_height || up.width != lev.orig_width) {
            Image crop(lev.orig_height, lev.orig_width, 1);
            for (int y = 0; y < crop.height; ++y)
                for (int x = 0; x < crop.width; ++x) crop.at(y, x) = up.at(y, x);
            cur = std::move(crop);
        } else {
            cur = std::move(up);
        }
    }
    return cur;
}

Image fuse_alpha(const Image& hr_warped, const Image& lr_up, const FusionParams& params) {
    if (!hr_warped.same_shape(lr_up))
        throw Error(ErrorCode::DimensionMismatch, "fuse_alpha: dims differ");
    Image out(hr_warped.height, hr_warped.width, hr_warped.channels);
    for (size_t i = 0; i < out.data.size(); ++i)
        out.data[i] = std::clamp(
            params.hr_weight * hr_warped.data[i] + params.lr_weight * lr_up.data[i], 0.0f, 1.0f);
    return out;
}

Image fuse_wavelet(const Image& hr_warped, const Image& lr_up, const FusionParams& params) {
    if (!hr_warped.same_shape(lr_up))
        throw Error(ErrorCode::DimensionMismatch, "fuse_wavelet: dims differ");
    Image out(hr_warped.height, hr_warped.width, hr_warped.channels);
    const size_t n = static_cast<size_t>(out.height) * out.width;
    for (int c = 0; c < out.channels; ++c) {
        Image hc(out.height, out.width, 1), lc(out.height, out.width, 1);
        for (size_t i = 0; i < n; ++i) {
            hc.data[i] = hr_warped.data[i * out.channels + c];
            lc.data[i] = lr_up.data[i * out.channels + c];
        }
        SubbandPyramid ph = dwt_haar2(hc, params.wavelet_levels);
        const SubbandPyramid pl = dwt_haar2(lc, params.wavelet_levels);
        ph.ll = pl.ll;  // approximation from the light field, details from hr
        const Image fused = idwt_haar2(ph);
        for (size_t i = 0; i < n; ++i)
            out.data[i * out.channels + c] = std::clamp(fused.data[i], 0.0f, 1.0f);
    }
    return out;
}

Image fuse(const Image& hr_warped, const Image& lr_up, const FusionParams& params) {
    return params.method == FusionMethod::AlphaBlend ? fuse_alpha(hr_warped, lr_up, params)
                                                     : fuse_wavelet(hr_warped, lr_up, params);
}

EnhanceResult enhance_lightfield(const LightField& lf, const Image& hr,
                                 const EnhanceOptions& opt) {
    if (lf.views.empty() || lf.views[0].empty())
        throw Error(ErrorCode::BadArgument, "enhance_lightfield: empty light field");
    if (hr.height < lf.view_height() || hr.width < lf.view_width())
        throw Error(ErrorCode::BadArgument, "enhance_lightfield: hr smaller than views");

    const int U = lf.angular_rows;
    const int V = lf.angular_cols;
    const int u0 = lf.center_row();
    const int v0 = lf.center_col();

    // Photometric registration: map hr toward the center view's color space.
    Image hr_reg = hr;
    if (opt.apply_imf && hr.channels == lf.view_channels())
        hr_reg = imf_apply(hr, imf_estimate(hr, lf.center_view()));

    std::vector<float> gains;
    if (opt.apply_vignette) gains = vignette_gain(lf);

    EnhanceResult res;
    res.upsampled = LightField(U, V);
    for (int u = 0; u < U; ++u)
        for (int v = 0; v < V; ++v) {
            Image view = lf.view(u, v);
            if (opt.apply_vignette) {
                const float g = gains[static_cast<size_t>(u) * V + v];
                for (float& px : view.data) px = std::clamp(px * g, 0.0f, 1.0f);
            }
            res.upsampled.view(u, v) = resize_bicubic(view, hr_reg.height, hr_reg.width);
        }

    const Image& center_up = res.upsampled.view(u0, v0);
    // Degradation-match hr for the estimation step only: brightness
    // constancy between a bicubic-upsampled view and the sharp hr is
    // biased at edges, so register against hr put through the same
    // downsample/upsample chain. The sharp hr is still what gets warped.
    Image hr_est = hr_reg;
    const int ky = hr_reg.height / lf.view_height();
    if (ky >= 2 && hr_reg.height == ky * lf.view_height() &&
        hr_reg.width == ky * lf.view_width())
        hr_est = resize_bicubic(box_downsample(hr_reg, ky), hr_reg.height, hr_reg.width);
    const FlowField f_center_hr = flow_estimate(center_up, hr_est, opt.flow);
    res.cross_flow_estimates = 1;

    const FlowField zero(hr_reg.height, hr_reg.width);
    FlowField f_left = zero, f_right = zero, f_top = zero, f_bottom = zero;
    if (V > 1) {
        f_left = flow_estimate(center_up, res.upsampled.view(u0, 0), opt.flow);
        f_right = flow_estimate(center_up, res.upsampled.view(u0, V - 1), opt.flow);
        res.intra_flow_estimates += 2;
    }
    if (U > 1) {
        f_top = flow_estimate(center_up, res.upsampled.view(0, v0), opt.flow);
        f_bottom = flow_estimate(center_up, res.upsampled.view(U - 1, v0), opt.flow);
        res.intra_flow_estimates += 2;
    }

    res.enhanced = LightField(U, V);
    auto process_view = [&](int u, int v) {
        const FlowField f_c2v = grid_interpolate(f_left, f_right, f_top, f_bottom, u, v, U, V);
        // view -> center by small-motion negation, then on into hr
        const FlowField warp_field = flow_compose(flow_negate_approx(f_c2v), f_center_hr);
        const Image hr_warped = warp_backward(hr_reg, warp_field);
        res.enhanced.view(u, v) = fuse(hr_warped, res.upsampled.view(u, v), opt.fusion);
    };

    const int total = U * V;
    const int threads = std::max(1, opt.threads);
    if (threads == 1) {
        for (int i = 0; i < total; ++i) process_view(i / V, i % V);
    } else {
        std::vector<std::thread> pool;
        std::atomic<int> next{0};
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (int i = next.fetch_add(1); i < total; i = next.fetch_add(1))
                    process_view(i / V, i % V);
            });
        for (auto& th : pool) th.join();
    }
    return res;
}

}  // namespace hlf
