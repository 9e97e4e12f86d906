#include "hlf/flow.hpp"

#include <algorithm>
#include <cmath>

#include "hlf/io.hpp"
#include "hlf/resample.hpp"

namespace hlf {

std::atomic<uint64_t> g_flow_estimate_count{0};

std::vector<Image> pyramid(const Image& img, const FlowParams& params) {
    if (img.channels != 1)
        throw Error(ErrorCode::BadArgument, "pyramid: single-channel input required");
    std::vector<Image> levels;
    levels.push_back(img);
    for (;;) {
        const Image& cur = levels.back();
        const int nh = static_cast<int>(std::lround(cur.height * params.pyramid_scale));
        const int nw = static_cast<int>(std::lround(cur.width * params.pyramid_scale));
        if (std::min(nh, nw) < params.min_level_size) break;
        levels.push_back(resize_bicubic(gaussian5(cur), nh, nw));
    }
    return levels;
}

namespace {

// One linearization step at a pyramid level: given the current flow
// (u, v), solve for the increment (du, dv) by IRLS + SOR.
void solve_increment(const Image& src, const Image& warped, std::vector<float>& u,
                     std::vector<float>& v, const FlowParams& p) {
    const int H = src.height, W = src.width;
    const size_t n = static_cast<size_t>(H) * W;

    std::vector<float> ix(n), iy(n), it(n);
    for (int y = 0; y < H; ++y)
        for (int x = 0; x < W; ++x) {
            const size_t i = static_cast<size_t>(y) * W + x;
            const int xm = std::max(x - 1, 0), xp = std::min(x + 1, W - 1);
            const int ym = std::max(y - 1, 0), yp = std::min(y + 1, H - 1);
            // gradients of the blend of both frames
            auto g = [&](int yy, int xx) {
                return 0.5f * (src.at(yy, xx) + warped.at(yy, xx));
            };
            ix[i] = (g(y, xp) - g(y, xm)) / static_cast<float>(xp - xm > 0 ? xp - xm : 1);
            iy[i] = (g(yp, x) - g(ym, x)) / static_cast<float>(yp - ym > 0 ? yp - ym : 1);
            it[i] = warped.at(y, x) - src.at(y, x);
        }

    std::vector<float> du(n, 0.0f), dv(n, 0.0f);
    std::vector<float> wd(n), phi(n);
    const float eps2 = p.charbonnier_eps * p.charbonnier_eps;

    for (int irls = 0; irls < p.irls_iterations; ++irls) {
        for (size_t i = 0; i < n; ++i) {
            const float r = it[i] + ix[i] * du[i] + iy[i] * dv[i];
            wd[i] = 1.0f / std::sqrt(r * r + eps2);
        }
        for (int y = 0; y < H; ++y)
            for (int x = 0; x < W; ++x) {
                const size_t i = static_cast<size_t>(y) * W + x;
                const int xp = std::min(x + 1, W - 1);
                const int yp = std::min(y + 1, H - 1);
                const size_t ir = static_cast<size_t>(y) * W + xp;
                const size_t id = static_cast<size_t>(yp) * W + x;
                const float gux = (u[ir] + du[ir]) - (u[i] + du[i]);
                const float guy = (u[id] + du[id]) - (u[i] + du[i]);
                const float gvx = (v[ir] + dv[ir]) - (v[i] + dv[i]);
                const float gvy = (v[id] + dv[id]) - (v[i] + dv[i]);
                phi[i] = 1.0f / std::sqrt(gux * gux + guy * guy + gvx * gvx + gvy * gvy + eps2);
            }

        for (int sweep = 0; sweep < p.sor_sweeps; ++sweep) {
            for (int y = 0; y < H; ++y)
                for (int x = 0; x < W; ++x) {
                    const size_t i = static_cast<size_t>(y) * W + x;
                    float sw = 0.0f, su = 0.0f, sv = 0.0f;
                    auto add = [&](int yy, int xx) {
                        const size_t j = static_cast<size_t>(yy) * W + xx;
                        const float w = 0.5f * (phi[i] + phi[j]);
                        sw += w;
                        su += w * (u[j] + du[j] - u[i]);
                        sv += w * (v[j] + dv[j] - v[i]);
                    };
                    if (x > 0) add(y, x - 1);
                    if (x < W - 1) add(y, x + 1);
                    if (y > 0) add(y - 1, x);
                    if (y < H - 1) add(y + 1, x);

                    const float a = p.alpha;
                    const float d = wd[i];
                    const float denom_u = d * ix[i] * ix[i] + a * sw + 1e-9f;
                    const float num_u =
                        -d * ix[i] * (it[i] + iy[i] * dv[i]) + a * su;
                    du[i] = (1.0f - p.sor_omega) * du[i] + p.sor_omega * num_u / denom_u;

                    const float denom_v = d * iy[i] * iy[i] + a * sw + 1e-9f;
                    const float num_v =
                        -d * iy[i] * (it[i] + ix[i] * du[i]) + a * sv;
                    dv[i] = (1.0f - p.sor_omega) * dv[i] + p.sor_omega * num_v / denom_v;
                }
        }
    }
    for (size_t i = 0; i < n; ++i) {
        u[i] += du[i];
        v[i] += dv[i];
    }
}

Image warp_gray(const Image& img, const std::vector<float>& u, const std::vector<float>& v) {
    Image out(img.height, img.width, 1);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            const size_t i = static_cast<size_t>(y) * img.width + x;
            out.at(y, x) = sample_bilinear(img, x + u[i], y + v[i], 0);
        }
    return out;
}

}  // namespace

FlowField flow_estimate(const Image& src, const Image& dst, const FlowParams& params) {
    if (src.height != dst.height || src.width != dst.width)
        throw Error(ErrorCode::DimensionMismatch, "flow_estimate: dims differ");
    g_flow_estimate_count.fetch_add(1, std::memory_order_relaxed);

    const Image src_g = to_gray(src);
    const Image dst_g = to_gray(dst);
    const std::vector<Image> ps = pyramid(src_g, params);
    const std::vector<Image> pd = pyramid(dst_g, params);

    std::vector<float> u, v;
    for (int level = static_cast<int>(ps.size()) - 1; level >= 0; --level) {
        const Image& s = ps[level];
        const Image& d = pd[level];
        const size_t n = static_cast<size_t>(s.height) * s.width;
        if (level == static_cast<int>(ps.size()) - 1) {
            u.assign(n, 0.0f);
            v.assign(n, 0.0f);
        } else {
            // upsample previous level's flow, rescaling displacements
            const Image& prev = ps[level + 1];
            Image cu(prev.height, prev.width, 1), cv(prev.height, prev.width, 1);
            std::copy(u.begin(), u.end(), cu.data.begin());
            std::copy(v.begin(), v.end(), cv.data.begin());
            const Image fu = resize_bicubic(cu, s.height, s.width);
            const Image fv = resize_bicubic(cv, s.height, s.width);
            const float rx = static_cast<float>(s.width) / prev.width;
            const float ry = static_cast<float>(s.height) / prev.height;
            u.resize(n);
            v.resize(n);
            for (size_t i = 0; i < n; ++i) {
                u[i] = fu.data[i] * rx;
                v[i] = fv.data[i] * ry;
            }
        }
        for (int outer = 0; outer < params.outer_iterations; ++outer) {
            const Image warped = warp_gray(d, u, v);
            solve_increment(s, warped, u, v, params);
        }
    }

    FlowField f(src.height, src.width);
    f.dx = std::move(u);
    f.dy = std::move(v);
    return f;
}

FlowField flow_compose(const FlowField& f_ab, const FlowField& f_bc) {
    if (!f_ab.same_shape(f_bc))
        throw Error(ErrorCode::DimensionMismatch, "flow_compose: dims differ");
    const int H = f_ab.height, W = f_ab.width;
    Image bx(H, W, 1), by(H, W, 1);
    std::copy(f_bc.dx.begin(), f_bc.dx.end(), bx.data.begin());
    std::copy(f_bc.dy.begin(), f_bc.dy.end(), by.data.begin());

    FlowField out(H, W);
    for (int y = 0; y < H; ++y)
        for (int x = 0; x < W; ++x) {
            const size_t i = out.idx(y, x);
            const float mx = x + f_ab.dx[i];
            const float my = y + f_ab.dy[i];
            out.dx[i] = f_ab.dx[i] + sample_bilinear(bx, mx, my, 0);
            out.dy[i] = f_ab.dy[i] + sample_bilinear(by, mx, my, 0);
        }
    return out;
}

FlowField flow_negate_approx(const FlowField& f) {
    FlowField out(f.height, f.width);
    for (size_t i = 0; i < f.dx.size(); ++i) {
        out.dx[i] = -f.dx[i];
        out.dy[i] = -f.dy[i];
    }
    return out;
}

FlowField grid_interpolate(const FlowField& f_left, const FlowField& f_right,
                           const FlowField& f_top, const FlowField& f_bottom,
                           int u, int v, int angular_rows, int angular_cols) {
    if (!f_left.same_shape(f_right) || !f_left.same_shape(f_top) || !f_left.same_shape(f_bottom))
        throw Error(ErrorCode::DimensionMismatch, "grid_interpolate: flow dims differ");
    if (u < 0 || u >= angular_rows || v < 0 || v >= angular_cols)
        throw Error(ErrorCode::OutOfRange, "grid_interpolate: target view out of range");
    const int u0 = angular_rows / 2;
    const int v0 = angular_cols / 2;

    float ah = 0.0f;  // weight on f_right (>0) or f_left (<0... stored separately)
    const FlowField* fh = nullptr;
    if (v > v0) {
        fh = &f_right;
        ah = static_cast<float>(v - v0) / (angular_cols - 1 - v0);
    } else if (v < v0) {
        fh = &f_left;
        ah = static_cast<float>(v0 - v) / v0;
    }
    float av = 0.0f;
    const FlowField* fv = nullptr;
    if (u > u0) {
        fv = &f_bottom;
        av = static_cast<float>(u - u0) / (angular_rows - 1 - u0);
    } else if (u < u0) {
        fv = &f_top;
        av = static_cast<float>(u0 - u) / u0;
    }

    FlowField out(f_left.height, f_left.width);
    for (size_t i = 0; i < out.dx.size(); ++i) {
        float dx = 0.0f, dy = 0.0f;
        if (fh) {
            dx += ah * fh->dx[i];
            dy += ah * fh->dy[i];
        }
        if (fv) {
            dx += av * fv->dx[i];
            dy += av * fv->dy[i];
        }
        out.dx[i] = dx;
        out.dy[i] = dy;
    }
    return out;
}

Image warp_backward(const Image& img, const FlowField& f) {
    if (img.height != f.height || img.width != f.width)
        throw Error(ErrorCode::DimensionMismatch, "warp_backward: dims differ");
    Image out(img.height, img.width, img.channels);
    std::vector<float> px(img.channels);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            const size_t i = f.idx(y, x);
            sample_bilinear_all(img, x + f.dx[i], y + f.dy[i], px.data());
            for (int c = 0; c < img.channels; ++c) out.at(y, x, c) = px[c];
        }
    return out;
}

ResidualStats residual(const Image& a, const Image& b) {
    if (!a.same_shape(b))
        throw Error(ErrorCode::DimensionMismatch, "residual: dims differ");
    ResidualStats r;
    r.abs_diff = Image(a.height, a.width, a.channels);
    double acc = 0.0, mx = 0.0;
    for (size_t i = 0; i < a.data.size(); ++i) {
        const double d = std::abs(a.data[i] - b.data[i]);
        r.abs_diff.data[i] = static_cast<float>(d);
        acc += d;
        mx = std::max(mx, d);
    }
    r.mean = acc / static_cast<double>(a.data.size());
    r.max = mx;
    return r;
}

void flow_write(const FlowField& f, const std::string& path) {
    LightField lf(1, 1);
    Image& v = lf.views[0];
    v.height = f.height;
    v.width = f.width;
    v.channels = 2;
    v.data.resize(f.dx.size() * 2);
    for (size_t i = 0; i < f.dx.size(); ++i) {
        v.data[i * 2] = f.dx[i];
        v.data[i * 2 + 1] = f.dy[i];
    }
    lfc_write(lf, path);
}

FlowField flow_read(const std::string& path) {
    const LightField lf = lfc_read(path);
    if (lf.angular_rows != 1 || lf.angular_cols != 1 || lf.view_channels() != 2)
        throw Error(ErrorCode::BadFormat, "flow_read: not a serialized flow field");
    const Image& v = lf.views[0];
    FlowField f(v.height, v.width);
    for (size_t i = 0; i < f.dx.size(); ++i) {
        f.dx[i] = v.data[i * 2];
        f.dy[i] = v.data[i * 2 + 1];
    }
    return f;
}

}  // namespace hlf
