#include "hlf/photometric.hpp"

#include <algorithm>
#include <cmath>

namespace hlf {

std::array<uint64_t, 256> histogram256(const Image& img, int channel) {
    if (channel < 0 || channel >= img.channels)
        throw Error(ErrorCode::OutOfRange, "histogram256: channel out of range");
    std::array<uint64_t, 256> counts{};
    const size_t n = static_cast<size_t>(img.height) * img.width;
    for (size_t i = 0; i < n; ++i) {
        const float v = img.data[i * img.channels + channel];
        int bin = static_cast<int>(std::floor(v * 256.0f));
        bin = std::clamp(bin, 0, 255);
        ++counts[bin];
    }
    return counts;
}

IntensityMatchFunction imf_estimate(const Image& source, const Image& target) {
    if (source.channels != target.channels)
        throw Error(ErrorCode::DimensionMismatch, "imf_estimate: channel counts differ");
    if (source.empty() || target.empty())
        throw Error(ErrorCode::BadArgument, "imf_estimate: empty input");

    IntensityMatchFunction imf;
    imf.luts.resize(source.channels);
    for (int c = 0; c < source.channels; ++c) {
        const auto hs = histogram256(source, c);
        const auto ht = histogram256(target, c);
        const double ns = static_cast<double>(source.height) * source.width;
        const double nt = static_cast<double>(target.height) * target.width;

        std::array<double, 256> cdf_s{}, cdf_t{};
        double acc = 0.0;
        for (int i = 0; i < 256; ++i) { acc += hs[i] / ns; cdf_s[i] = acc; }
        acc = 0.0;
        for (int i = 0; i < 256; ++i) { acc += ht[i] / nt; cdf_t[i] = acc; }

        int j = 0;
        float run_max = 0.0f;
        for (int i = 0; i < 256; ++i) {
            // skip the target's zero-mass prefix so empty source bins
            // still land on actual target mass
            while (j < 255 && (cdf_t[j] <= 0.0 || cdf_t[j] < cdf_s[i] - 1e-12)) ++j;
            float v = (j + 0.5f) / 256.0f;
            run_max = std::max(run_max, v);
            imf.luts[c][i] = run_max;
        }
    }
    return imf;
}

Image imf_apply(const Image& img, const IntensityMatchFunction& imf) {
    if (img.channels != imf.channels())
        throw Error(ErrorCode::DimensionMismatch, "imf_apply: channel counts differ");
    Image out(img.height, img.width, img.channels);
    const size_t n = static_cast<size_t>(img.height) * img.width;
    for (size_t i = 0; i < n; ++i)
        for (int c = 0; c < img.channels; ++c) {
            const auto& lut = imf.luts[c];
            // Bin centers sit at (k + 0.5) / 256; interpolate between them.
            const float t = img.data[i * img.channels + c] * 256.0f - 0.5f;
            float v;
            if (t <= 0.0f) {
                v = lut[0];
            } else if (t >= 255.0f) {
                v = lut[255];
            } else {
                const int k = static_cast<int>(t);
                const float f = t - k;
                v = (1.0f - f) * lut[k] + f * lut[k + 1];
            }
            out.data[i * img.channels + c] = std::clamp(v, 0.0f, 1.0f);
        }
    return out;
}

}  // namespace hlf
