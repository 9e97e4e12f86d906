#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>

#include "hlf/image.hpp"

namespace testutil {

inline std::string temp_path(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "hlf_tests";
    std::filesystem::create_directories(dir);
    return (dir / name).string();
}

// Band-limited analytic texture: evaluable at arbitrary real coordinates,
// so translated copies are exact, not resampled.
inline float analytic_texture(float x, float y) {
    float v = 0.5f;
    v += 0.16f * std::sin(2.0f * 3.14159265f * (0.031f * x + 0.017f * y) + 0.3f);
    v += 0.12f * std::sin(2.0f * 3.14159265f * (0.011f * x - 0.041f * y) + 1.1f);
    v += 0.10f * std::sin(2.0f * 3.14159265f * (0.053f * x + 0.029f * y) + 2.2f);
    v += 0.08f * std::sin(2.0f * 3.14159265f * (-0.023f * x + 0.047f * y) + 0.7f);
    return v;
}

inline hlf::Image analytic_image(int h, int w, float shift_x = 0.0f, float shift_y = 0.0f) {
    hlf::Image img(h, w, 1);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            img.at(y, x) = analytic_texture(x - shift_x, y - shift_y);
    return img;
}

inline hlf::Image random_image(int h, int w, int c, uint32_t seed) {
    hlf::Image img(h, w, c);
    std::mt19937 rng(seed);
    std::uniform_real_distribution<float> dist(0.0f, 1.0f);
    for (float& v : img.data) v = dist(rng);
    return img;
}

}  // namespace testutil
