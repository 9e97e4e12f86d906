#include "hlf/depth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hlf {

DisparityMap disparity_from_flow(const Image& left, const Image& right,
                                 const FlowParams& params) {
    if (left.height != right.height || left.width != right.width)
        throw Error(ErrorCode::DimensionMismatch, "disparity_from_flow: dims differ");
    const FlowField f = flow_estimate(left, right, params);
    DisparityMap map(f.height, f.width);
    for (size_t i = 0; i < f.dx.size(); ++i) {
        map.d[i] = f.dx[i];
        map.valid[i] = std::abs(f.dy[i]) <= 1.0f ? 1 : 0;
    }
    return map;
}

DisparityMap disparity_block_match(const Image& left, const Image& right,
                                   int max_d, int window) {
    if (!left.same_shape(right))
        throw Error(ErrorCode::DimensionMismatch, "disparity_block_match: dims differ");
    if (window < 3 || window % 2 == 0)
        throw Error(ErrorCode::BadArgument, "disparity_block_match: window must be odd >= 3");
    if (window > left.height || window > left.width)
        throw Error(ErrorCode::BadArgument, "disparity_block_match: window exceeds image");

    const Image lg = to_gray(left);
    const Image rg = to_gray(right);
    const int H = lg.height, W = lg.width;
    const int r = window / 2;
    DisparityMap map(H, W);
    for (int y = r; y < H - r; ++y)
        for (int x = r; x < W - r; ++x) {
            float best = std::numeric_limits<float>::max();
            int best_d = 0;
            for (int d = 0; d <= max_d; ++d) {
                if (x + d + r >= W) break;
                float sad = 0.0f;
                for (int dy = -r; dy <= r; ++dy)
                    for (int dx = -r; dx <= r; ++dx)
                        sad += std::abs(lg.at(y + dy, x + dx) - rg.at(y + dy, x + d + dx));
                if (sad < best) {  // strict: ties keep the smaller d
                    best = sad;
                    best_d = d;
                }
            }
            const size_t i = map.idx(y, x);
            map.d[i] = static_cast<float>(best_d);
            map.valid[i] = 1;
        }
    return map;
}

DepthMap depth_from_disparity(const DisparityMap& d, const StereoGeometry& g) {
    if (g.focal_px <= 0.0 || g.baseline_m <= 0.0)
        throw Error(ErrorCode::BadArgument, "depth_from_disparity: invalid geometry");
    DepthMap out;
    out.height = d.height;
    out.width = d.width;
    out.z.assign(d.d.size(), 0.0f);
    out.valid.assign(d.d.size(), 0);
    const double fb = g.focal_px * g.baseline_m;
    for (size_t i = 0; i < d.d.size(); ++i) {
        if (d.valid[i] && d.d[i] > 0.0f) {
            out.z[i] = static_cast<float>(fb / d.d[i]);
            out.valid[i] = 1;
        }
    }
    return out;
}

double disparity_from_depth(double z_m, const StereoGeometry& g) {
    if (z_m <= 0.0)
        throw Error(ErrorCode::BadArgument, "disparity_from_depth: depth must be positive");
    return g.focal_px * g.baseline_m / z_m;
}

double depth_error(double z_m, const StereoGeometry& g, const DepthErrorModel& m,
                   ErrorMode mode) {
    if (z_m <= 0.0)
        throw Error(ErrorCode::BadArgument, "depth_error: depth must be positive");
    const double fb = g.focal_px * g.baseline_m;
    if (mode == ErrorMode::Approx) return z_m * z_m * m.disparity_error_px / fb;
    const double d = fb / z_m;
    return fb / d - fb / (d + m.disparity_error_px);
}

double max_range(const StereoGeometry& g, const DepthErrorModel& m, double error_bound_m) {
    if (error_bound_m <= 0.0)
        throw Error(ErrorCode::BadArgument, "max_range: bound must be positive");
    return std::sqrt(error_bound_m * g.focal_px * g.baseline_m / m.disparity_error_px);
}

std::vector<DisparityProfileRow> disparity_profile(
    const Image& left, const Image& right, const StereoGeometry& g,
    const std::vector<double>& depths_m, const std::vector<std::vector<uint8_t>>& masks,
    const FlowParams& params) {
    if (depths_m.empty())
        throw Error(ErrorCode::BadArgument, "disparity_profile: empty depth list");
    if (masks.size() != depths_m.size())
        throw Error(ErrorCode::BadArgument, "disparity_profile: mask/depth count mismatch");

    const DisparityMap map = disparity_from_flow(left, right, params);
    std::vector<DisparityProfileRow> rows;
    for (size_t k = 0; k < depths_m.size(); ++k) {
        DisparityProfileRow row;
        row.depth_m = depths_m[k];
        row.predicted_px = disparity_from_depth(depths_m[k], g);
        std::vector<float> vals;
        for (size_t i = 0; i < map.d.size(); ++i)
            if (i < masks[k].size() && masks[k][i] && map.valid[i]) vals.push_back(map.d[i]);
        if (!vals.empty()) {
            std::nth_element(vals.begin(), vals.begin() + vals.size() / 2, vals.end());
            row.measured_px = vals[vals.size() / 2];
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace hlf
