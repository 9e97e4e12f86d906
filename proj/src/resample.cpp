#include "hlf/resample.hpp"

#include <algorithm>
#include <cmath>

namespace hlf {

namespace {

inline int clampi(int v, int lo, int hi) {
    return v < lo ? lo : (v > hi ? hi : v);
}

// Catmull-Rom weights for fractional offset t in [0,1), taps at -1..2.
inline void catmull_rom(float t, float w[4]) {
    const float t2 = t * t;
    const float t3 = t2 * t;
    w[0] = -0.5f * t3 + t2 - 0.5f * t;
    w[1] = 1.5f * t3 - 2.5f * t2 + 1.0f;
    w[2] = -1.5f * t3 + 2.0f * t2 + 0.5f * t;
    w[3] = 0.5f * t3 - 0.5f * t2;
}

}  // namespace

float sample_bilinear(const Image& img, float x, float y, int channel) {
    const float xc = std::clamp(x, 0.0f, static_cast<float>(img.width - 1));
    const float yc = std::clamp(y, 0.0f, static_cast<float>(img.height - 1));
    const int x0 = static_cast<int>(std::floor(xc));
    const int y0 = static_cast<int>(std::floor(yc));
    const int x1 = std::min(x0 + 1, img.width - 1);
    const int y1 = std::min(y0 + 1, img.height - 1);
    const float fx = xc - x0;
    const float fy = yc - y0;
    const float a = img.at(y0, x0, channel);
    const float b = img.at(y0, x1, channel);
    const float c = img.at(y1, x0, channel);
    const float d = img.at(y1, x1, channel);
    return (1 - fy) * ((1 - fx) * a + fx * b) + fy * ((1 - fx) * c + fx * d);
}

void sample_bilinear_all(const Image& img, float x, float y, float* out) {
    const float xc = std::clamp(x, 0.0f, static_cast<float>(img.width - 1));
    const float yc = std::clamp(y, 0.0f, static_cast<float>(img.height - 1));
    const int x0 = static_cast<int>(std::floor(xc));
    const int y0 = static_cast<int>(std::floor(yc));
    const int x1 = std::min(x0 + 1, img.width - 1);
    const int y1 = std::min(y0 + 1, img.height - 1);
    const float fx = xc - x0;
    const float fy = yc - y0;
    for (int c = 0; c < img.channels; ++c) {
        const float p00 = img.at(y0, x0, c);
        const float p01 = img.at(y0, x1, c);
        const float p10 = img.at(y1, x0, c);
        const float p11 = img.at(y1, x1, c);
        out[c] = (1 - fy) * ((1 - fx) * p00 + fx * p01) + fy * ((1 - fx) * p10 + fx * p11);
    }
}

Image resize_bicubic(const Image& img, int out_height, int out_width) {
    if (out_height < 1 || out_width < 1)
        throw Error(ErrorCode::BadArgument, "resize_bicubic: output dims must be >= 1");
    if (img.empty())
        throw Error(ErrorCode::BadArgument, "resize_bicubic: empty input");
    if (out_height == img.height && out_width == img.width) return img;

    const float sy = static_cast<float>(img.height) / out_height;
    const float sx = static_cast<float>(img.width) / out_width;

    // Horizontal pass, then vertical.
    Image tmp(img.height, out_width, img.channels);
    for (int x = 0; x < out_width; ++x) {
        const float src = (x + 0.5f) * sx - 0.5f;
        const int xi = static_cast<int>(std::floor(src));
        float w[4];
        catmull_rom(src - xi, w);
        int idx[4];
        for (int k = 0; k < 4; ++k) idx[k] = clampi(xi - 1 + k, 0, img.width - 1);
        for (int y = 0; y < img.height; ++y)
            for (int c = 0; c < img.channels; ++c) {
                float acc = 0.0f;
                for (int k = 0; k < 4; ++k) acc += w[k] * img.at(y, idx[k], c);
                tmp.at(y, x, c) = acc;
            }
    }
    Image out(out_height, out_width, img.channels);
    for (int y = 0; y < out_height; ++y) {
        const float src = (y + 0.5f) * sy - 0.5f;
        const int yi = static_cast<int>(std::floor(src));
        float w[4];
        catmull_rom(src - yi, w);
        int idx[4];
        for (int k = 0; k < 4; ++k) idx[k] = clampi(yi - 1 + k, 0, img.height - 1);
        for (int x = 0; x < out_width; ++x)
            for (int c = 0; c < img.channels; ++c) {
                float acc = 0.0f;
                for (int k = 0; k < 4; ++k) acc += w[k] * tmp.at(idx[k], x, c);
                out.at(y, x, c) = acc;
            }
    }
    return out;
}

Image gaussian5(const Image& img) {
    // 5-tap kernel for sigma = 1.0, normalized.
    static const float k[5] = {0.0544886845f, 0.2442013420f, 0.4026199469f,
                               0.2442013420f, 0.0544886845f};
    Image tmp(img.height, img.width, img.channels);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            for (int c = 0; c < img.channels; ++c) {
                float acc = 0.0f;
                for (int t = -2; t <= 2; ++t)
                    acc += k[t + 2] * img.at(y, clampi(x + t, 0, img.width - 1), c);
                tmp.at(y, x, c) = acc;
            }
    Image out(img.height, img.width, img.channels);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            for (int c = 0; c < img.channels; ++c) {
                float acc = 0.0f;
                for (int t = -2; t <= 2; ++t)
                    acc += k[t + 2] * tmp.at(clampi(y + t, 0, img.height - 1), x, c);
                out.at(y, x, c) = acc;
            }
    return out;
}

Image box_downsample(const Image& img, int k) {
    if (k < 1 || img.height % k != 0 || img.width % k != 0)
        throw Error(ErrorCode::BadArgument, "box_downsample: dims not divisible by k");
    if (k == 1) return img;
    Image out(img.height / k, img.width / k, img.channels);
    const float inv = 1.0f / (k * k);
    for (int y = 0; y < out.height; ++y)
        for (int x = 0; x < out.width; ++x)
            for (int c = 0; c < img.channels; ++c) {
                float acc = 0.0f;
                for (int dy = 0; dy < k; ++dy)
                    for (int dx = 0; dx < k; ++dx)
                        acc += img.at(y * k + dy, x * k + dx, c);
                out.at(y, x, c) = acc * inv;
            }
    return out;
}

}  // namespace hlf
