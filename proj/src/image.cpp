#include "hlf/image.hpp"

namespace hlf {

Image luma(const Image& img) {
    if (img.channels != 3)
        throw Error(ErrorCode::BadArgument, "luma: expected 3-channel image");
    Image out(img.height, img.width, 1);
    const size_t n = static_cast<size_t>(img.height) * img.width;
    for (size_t i = 0; i < n; ++i) {
        const float* p = &img.data[i * 3];
        out.data[i] = 0.299f * p[0] + 0.587f * p[1] + 0.114f * p[2];
    }
    return out;
}

Image to_gray(const Image& img) {
    if (img.channels == 1) return img;
    return luma(img);
}

}  // namespace hlf
