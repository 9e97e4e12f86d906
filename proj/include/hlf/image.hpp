#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace hlf {

// Every operation that can fail throws hlf::Error with a stable code so
// callers (and the CLI) can distinguish failure modes without string matching.
enum class ErrorCode {
    IoFailure,
    BadFormat,
    DimensionMismatch,
    OutOfRange,
    BadArgument,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg)
        : std::runtime_error(msg), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

// H x W x C raster of float intensities, row-major, channel-interleaved.
// Nominal range is [0,1]; transform-domain intermediates may exceed it,
// file writers clamp.
struct Image {
    int height = 0;
    int width = 0;
    int channels = 0;
    std::vector<float> data;

    Image() = default;
    Image(int h, int w, int c, float fill = 0.0f)
        : height(h), width(w), channels(c),
          data(static_cast<size_t>(h) * w * c, fill) {
        if (h < 0 || w < 0 || (c != 1 && c != 3))
            throw Error(ErrorCode::BadArgument, "Image: bad dimensions");
    }

    bool empty() const { return data.empty(); }

    float& at(int y, int x, int c = 0) {
        return data[(static_cast<size_t>(y) * width + x) * channels + c];
    }
    float at(int y, int x, int c = 0) const {
        return data[(static_cast<size_t>(y) * width + x) * channels + c];
    }

    bool same_shape(const Image& o) const {
        return height == o.height && width == o.width && channels == o.channels;
    }
};

// U x V grid of identically shaped views. u indexes angular rows
// (top to bottom), v angular columns (left to right). The center view
// is (U/2, V/2), zero-based.
struct LightField {
    int angular_rows = 0;   // U
    int angular_cols = 0;   // V
    std::vector<Image> views;  // row-major: views[u * V + v]

    LightField() = default;
    LightField(int u, int v) : angular_rows(u), angular_cols(v), views(static_cast<size_t>(u) * v) {
        if (u < 1 || v < 1)
            throw Error(ErrorCode::BadArgument, "LightField: angular dims must be >= 1");
    }

    int center_row() const { return angular_rows / 2; }
    int center_col() const { return angular_cols / 2; }

    Image& view(int u, int v) {
        check_index(u, v);
        return views[static_cast<size_t>(u) * angular_cols + v];
    }
    const Image& view(int u, int v) const {
        check_index(u, v);
        return views[static_cast<size_t>(u) * angular_cols + v];
    }
    const Image& center_view() const { return view(center_row(), center_col()); }

    int view_height() const { return views.empty() ? 0 : views[0].height; }
    int view_width() const { return views.empty() ? 0 : views[0].width; }
    int view_channels() const { return views.empty() ? 0 : views[0].channels; }

private:
    void check_index(int u, int v) const {
        if (u < 0 || u >= angular_rows || v < 0 || v >= angular_cols)
            throw Error(ErrorCode::OutOfRange, "LightField::view: index out of range");
    }
};

// BT.601 luma; identity on single-channel input is not allowed, callers
// must pass 3-channel images.
Image luma(const Image& img);

// Returns img if already single channel, else luma(img).
Image to_gray(const Image& img);

}  // namespace hlf
