#include "hlf/refocus.hpp"

#include <algorithm>
#include <cmath>

#include "hlf/resample.hpp"

namespace hlf {

Image refocus(const LightField& lf, const RefocusParams& params) {
    if (lf.views.empty() || lf.views[0].empty())
        throw Error(ErrorCode::BadArgument, "refocus: empty light field");
    const int U = lf.angular_rows, V = lf.angular_cols;
    if (!params.mask.empty() && static_cast<int>(params.mask.size()) != U * V)
        throw Error(ErrorCode::BadArgument, "refocus: mask size mismatch");
    bool any = params.mask.empty();
    for (bool b : params.mask) any = any || b;
    if (!any) throw Error(ErrorCode::BadArgument, "refocus: empty view mask");

    const int H = lf.view_height(), W = lf.view_width(), C = lf.view_channels();
    const int u0 = lf.center_row(), v0 = lf.center_col();

    std::vector<double> acc(static_cast<size_t>(H) * W * C, 0.0);
    std::vector<double> wgt(static_cast<size_t>(H) * W, 0.0);
    std::vector<float> px(C);

    for (int u = 0; u < U; ++u)
        for (int v = 0; v < V; ++v) {
            if (!params.mask.empty() && !params.mask[static_cast<size_t>(u) * V + v]) continue;
            const Image& view = lf.view(u, v);
            const float sx = params.slope * (v - v0);
            const float sy = params.slope * (u - u0);
            for (int y = 0; y < H; ++y)
                for (int x = 0; x < W; ++x) {
                    const float xs = x + sx;
                    const float ys = y + sy;
                    if (params.boundary_normalize &&
                        (xs < 0.0f || xs > W - 1 || ys < 0.0f || ys > H - 1))
                        continue;
                    sample_bilinear_all(view, xs, ys, px.data());
                    const size_t i = static_cast<size_t>(y) * W + x;
                    for (int c = 0; c < C; ++c) acc[i * C + c] += px[c];
                    wgt[i] += 1.0;
                }
        }

    Image out(H, W, C);
    for (size_t i = 0; i < wgt.size(); ++i) {
        const double w = wgt[i] > 0.0 ? wgt[i] : 1.0;
        for (int c = 0; c < C; ++c)
            out.data[i * C + c] = static_cast<float>(acc[i * C + c] / w);
    }
    return out;
}

Image epi_horizontal(const LightField& lf, int y, int u) {
    if (u < 0 || u >= lf.angular_rows || y < 0 || y >= lf.view_height())
        throw Error(ErrorCode::OutOfRange, "epi_horizontal: index out of range");
    const int V = lf.angular_cols, W = lf.view_width(), C = lf.view_channels();
    Image epi(V, W, C);
    for (int v = 0; v < V; ++v) {
        const Image& view = lf.view(u, v);
        for (int x = 0; x < W; ++x)
            for (int c = 0; c < C; ++c) epi.at(v, x, c) = view.at(y, x, c);
    }
    return epi;
}

Image epi_horizontal(const LightField& lf, int y) {
    return epi_horizontal(lf, y, lf.center_row());
}

Image epi_vertical(const LightField& lf, int x, int v) {
    if (v < 0 || v >= lf.angular_cols || x < 0 || x >= lf.view_width())
        throw Error(ErrorCode::OutOfRange, "epi_vertical: index out of range");
    const int U = lf.angular_rows, H = lf.view_height(), C = lf.view_channels();
    Image epi(U, H, C);
    for (int u = 0; u < U; ++u) {
        const Image& view = lf.view(u, v);
        for (int y = 0; y < H; ++y)
            for (int c = 0; c < C; ++c) epi.at(u, y, c) = view.at(y, x, c);
    }
    return epi;
}

Image epi_vertical(const LightField& lf, int x) {
    return epi_vertical(lf, x, lf.center_col());
}

double sharpness_vol(const Image& img) {
    if (img.empty())
        throw Error(ErrorCode::BadArgument, "sharpness_vol: empty image");
    const Image g = to_gray(img);
    if (g.height < 3 || g.width < 3) return 0.0;
    std::vector<double> lap;
    lap.reserve(static_cast<size_t>(g.height - 2) * (g.width - 2));
    for (int y = 1; y < g.height - 1; ++y)
        for (int x = 1; x < g.width - 1; ++x)
            lap.push_back(g.at(y - 1, x) + g.at(y + 1, x) + g.at(y, x - 1) + g.at(y, x + 1) -
                          4.0 * g.at(y, x));
    double mean = 0.0;
    for (double v : lap) mean += v;
    mean /= static_cast<double>(lap.size());
    double var = 0.0;
    for (double v : lap) var += (v - mean) * (v - mean);
    return var / static_cast<double>(lap.size());
}

}  // namespace hlf
