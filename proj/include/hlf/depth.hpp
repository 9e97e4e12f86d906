#pragma once

#include <vector>

#include "hlf/flow.hpp"
#include "hlf/image.hpp"

namespace hlf {

struct StereoGeometry {
    double focal_px = 0.0;   // f
    double baseline_m = 0.0; // b
};

struct DepthErrorModel {
    double disparity_error_px = 1.0;  // eps_d
};

enum class ErrorMode { Exact, Approx };

// Signed horizontal disparity in pixels plus a validity mask.
// Positive disparity = rightward shift of the right image's content.
struct DisparityMap {
    int height = 0;
    int width = 0;
    std::vector<float> d;
    std::vector<uint8_t> valid;

    DisparityMap() = default;
    DisparityMap(int h, int w)
        : height(h), width(w),
          d(static_cast<size_t>(h) * w, 0.0f),
          valid(static_cast<size_t>(h) * w, 0) {}
    size_t idx(int y, int x) const { return static_cast<size_t>(y) * width + x; }
};

// Disparity = horizontal flow component of left -> right; pixels with
// |vertical component| > 1 px are marked invalid.
DisparityMap disparity_from_flow(const Image& left, const Image& right,
                                 const FlowParams& params);

// Integer SAD block matching over d in [0, max_d]; ties take the
// smallest d. Border pixels (window or shift out of bounds) invalid.
// Independent cross-check for the flow-based path.
DisparityMap disparity_block_match(const Image& left, const Image& right,
                                   int max_d, int window);

// z = f b / d per valid pixel with d > 0; others invalid (depth 0).
struct DepthMap {
    int height = 0;
    int width = 0;
    std::vector<float> z;
    std::vector<uint8_t> valid;
};

DepthMap depth_from_disparity(const DisparityMap& d, const StereoGeometry& g);

double disparity_from_depth(double z_m, const StereoGeometry& g);

// Eq-style depth error for disparity error eps_d at depth z:
// exact  fb/d - fb/(d + eps_d), approx  z^2 eps_d / (f b).
double depth_error(double z_m, const StereoGeometry& g, const DepthErrorModel& m,
                   ErrorMode mode);

// Maximum depth at which the approximate depth error stays within
// error_bound: sqrt(E f b / eps_d).
double max_range(const StereoGeometry& g, const DepthErrorModel& m, double error_bound_m);

struct DisparityProfileRow {
    double depth_m = 0.0;
    double predicted_px = 0.0;
    double measured_px = 0.0;
};

// Median measured disparity inside each mask vs the fb/z prediction.
std::vector<DisparityProfileRow> disparity_profile(
    const Image& left, const Image& right, const StereoGeometry& g,
    const std::vector<double>& depths_m, const std::vector<std::vector<uint8_t>>& masks,
    const FlowParams& params);

}  // namespace hlf
