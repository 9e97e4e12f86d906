#include "hlf/decode.hpp"

#include <algorithm>

namespace hlf {

namespace {

void check_grid(const LensletGrid& g) {
    if (g.lenslets_y < 1 || g.lenslets_x < 1 || g.pixels_y < 1 || g.pixels_x < 1 ||
        g.offset_y < 0 || g.offset_x < 0)
        throw Error(ErrorCode::BadArgument, "lenslet grid: counts must be >= 1, offsets >= 0");
}

float mean_intensity_gray(const Image& img) {
    // Luma for color views, raw mean for single channel.
    double acc = 0.0;
    if (img.channels == 3) {
        const size_t n = static_cast<size_t>(img.height) * img.width;
        for (size_t i = 0; i < n; ++i) {
            const float* p = &img.data[i * 3];
            acc += 0.299f * p[0] + 0.587f * p[1] + 0.114f * p[2];
        }
        return static_cast<float>(acc / n);
    }
    for (float v : img.data) acc += v;
    return static_cast<float>(acc / img.data.size());
}

}  // namespace

Image mux_rect_lenslet(const LightField& lf, const LensletGrid& grid) {
    check_grid(grid);
    if (lf.angular_rows != grid.pixels_y || lf.angular_cols != grid.pixels_x ||
        lf.view_height() != grid.lenslets_y || lf.view_width() != grid.lenslets_x)
        throw Error(ErrorCode::DimensionMismatch, "mux_rect_lenslet: field does not match grid");

    const int C = lf.view_channels();
    Image raw(grid.offset_y + grid.lenslets_y * grid.pixels_y,
              grid.offset_x + grid.lenslets_x * grid.pixels_x, C);
    for (int u = 0; u < grid.pixels_y; ++u)
        for (int v = 0; v < grid.pixels_x; ++v) {
            const Image& view = lf.view(u, v);
            for (int i = 0; i < grid.lenslets_y; ++i)
                for (int j = 0; j < grid.lenslets_x; ++j)
                    for (int c = 0; c < C; ++c)
                        raw.at(grid.offset_y + i * grid.pixels_y + u,
                               grid.offset_x + j * grid.pixels_x + v, c) = view.at(i, j, c);
        }
    return raw;
}

LightField decode_rect_lenslet(const Image& raw, const LensletGrid& grid) {
    check_grid(grid);
    if (raw.height != grid.offset_y + grid.lenslets_y * grid.pixels_y ||
        raw.width != grid.offset_x + grid.lenslets_x * grid.pixels_x)
        throw Error(ErrorCode::DimensionMismatch, "decode_rect_lenslet: raw dims inconsistent with grid");

    LightField lf(grid.pixels_y, grid.pixels_x);
    for (int u = 0; u < grid.pixels_y; ++u)
        for (int v = 0; v < grid.pixels_x; ++v) {
            Image view(grid.lenslets_y, grid.lenslets_x, raw.channels);
            for (int i = 0; i < grid.lenslets_y; ++i)
                for (int j = 0; j < grid.lenslets_x; ++j)
                    for (int c = 0; c < raw.channels; ++c)
                        view.at(i, j, c) = raw.at(grid.offset_y + i * grid.pixels_y + u,
                                                  grid.offset_x + j * grid.pixels_x + v, c);
            lf.view(u, v) = std::move(view);
        }
    return lf;
}

std::vector<float> vignette_gain(const LightField& lf) {
    if (lf.views.empty() || lf.views[0].empty())
        throw Error(ErrorCode::BadArgument, "vignette_gain: empty field");
    constexpr float kEps = 1e-4f;
    const float center_mean = mean_intensity_gray(lf.center_view());
    std::vector<float> gains(lf.views.size());
    for (int u = 0; u < lf.angular_rows; ++u)
        for (int v = 0; v < lf.angular_cols; ++v) {
            float g = center_mean / std::max(mean_intensity_gray(lf.view(u, v)), kEps);
            if (u == lf.center_row() && v == lf.center_col()) g = 1.0f;
            gains[static_cast<size_t>(u) * lf.angular_cols + v] = g;
        }
    return gains;
}

}  // namespace hlf
