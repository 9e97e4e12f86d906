// hlf: hybrid light field toolkit command line.
//
// Subcommands cover every pipeline stage plus an end-to-end run on the
// built-in synthetic rig. Value precedence: --set flag > config file >
// built-in default.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "hlf/config.hpp"
#include "hlf/decode.hpp"
#include "hlf/depth.hpp"
#include "hlf/flow.hpp"
#include "hlf/fusion.hpp"
#include "hlf/io.hpp"
#include "hlf/occlusion.hpp"
#include "hlf/photometric.hpp"
#include "hlf/refocus.hpp"
#include "hlf/resample.hpp"
#include "hlf/synth.hpp"

namespace fs = std::filesystem;
using namespace hlf;

namespace {

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "threads",
        // flow solver
        "flow_alpha", "flow_scale", "flow_min_size", "flow_outer", "flow_irls",
        "flow_sor_sweeps", "flow_sor_omega", "flow_eps",
        // fusion
        "fusion_method", "fusion_hr_weight", "fusion_lr_weight", "fusion_levels",
        "enhance_imf", "enhance_vignette", "enhance_write_views",
        // lenslet grid
        "grid_lenslets_y", "grid_lenslets_x", "grid_pixels_y", "grid_pixels_x",
        "grid_offset_y", "grid_offset_x",
        // refocus / epi
        "refocus_slope", "refocus_slope_min", "refocus_slope_max", "refocus_slope_steps",
        "refocus_boundary_norm", "refocus_exclude_corners",
        "epi_direction", "epi_index", "epi_angular",
        // depth
        "focal_px", "baseline_m", "eps_d", "error_bound_m",
        "depth_method", "depth_max_d", "depth_window",
        // occlusion
        "occlusion_tau", "occlusion_dilate",
        // synthetic rig
        "synth_u", "synth_v", "synth_step_baseline_m", "synth_hr_offset_m",
        "synth_k", "synth_height", "synth_width", "synth_channels", "synth_seed",
        "synth_scene", "synth_depths",
    };
    return keys;
}

FlowParams flow_params(const Config& cfg) {
    FlowParams p;
    p.alpha = static_cast<float>(cfg.get_double("flow_alpha", p.alpha));
    p.pyramid_scale = static_cast<float>(cfg.get_double("flow_scale", p.pyramid_scale));
    p.min_level_size = cfg.get_int("flow_min_size", p.min_level_size);
    p.outer_iterations = cfg.get_int("flow_outer", p.outer_iterations);
    p.irls_iterations = cfg.get_int("flow_irls", p.irls_iterations);
    p.sor_sweeps = cfg.get_int("flow_sor_sweeps", p.sor_sweeps);
    p.sor_omega = static_cast<float>(cfg.get_double("flow_sor_omega", p.sor_omega));
    p.charbonnier_eps = static_cast<float>(cfg.get_double("flow_eps", p.charbonnier_eps));
    return p;
}

FusionParams fusion_params(const Config& cfg) {
    FusionParams p;
    const std::string m = cfg.get_string("fusion_method", "alpha");
    if (m == "alpha") p.method = FusionMethod::AlphaBlend;
    else if (m == "wavelet") p.method = FusionMethod::Wavelet;
    else throw Error(ErrorCode::BadArgument, "fusion_method must be alpha or wavelet");
    p.hr_weight = static_cast<float>(cfg.get_double("fusion_hr_weight", p.hr_weight));
    p.lr_weight = static_cast<float>(cfg.get_double("fusion_lr_weight", p.lr_weight));
    p.wavelet_levels = cfg.get_int("fusion_levels", p.wavelet_levels);
    if (std::abs(p.hr_weight + p.lr_weight - 1.0f) > 1e-5f)
        throw Error(ErrorCode::BadArgument, "fusion weights must sum to 1");
    return p;
}

RigSpec rig_spec(const Config& cfg) {
    RigSpec r;
    r.angular_rows = cfg.get_int("synth_u", r.angular_rows);
    r.angular_cols = cfg.get_int("synth_v", r.angular_cols);
    r.step_baseline_m = cfg.get_double("synth_step_baseline_m", r.step_baseline_m);
    r.hr_offset_m = cfg.get_double("synth_hr_offset_m", r.hr_offset_m);
    r.lr_factor = cfg.get_int("synth_k", r.lr_factor);
    r.hr_height = cfg.get_int("synth_height", r.hr_height);
    r.hr_width = cfg.get_int("synth_width", r.hr_width);
    return r;
}

SceneSpec scene_spec(const Config& cfg, const RigSpec& rig) {
    const double f = cfg.get_double("focal_px", 1000.0);
    const int c = cfg.get_int("synth_channels", 3);
    const uint32_t seed = static_cast<uint32_t>(cfg.get_int("synth_seed", 7));
    const std::string kind = cfg.get_string("synth_scene", "default");
    if (kind == "default")
        return default_scene(rig.hr_height, rig.hr_width, c, f, seed);
    if (kind == "staircase") {
        const std::vector<double> depths =
            cfg.get_double_list("synth_depths", {0.4, 0.8, 1.2, 1.6, 2.0, 2.4});
        return staircase_scene(rig.hr_height, rig.hr_width, c, f, depths, seed);
    }
    throw Error(ErrorCode::BadArgument, "synth_scene must be default or staircase");
}

struct StageTimer {
    std::vector<std::pair<std::string, double>> rows;
    template <typename F>
    auto run(const std::string& name, F&& f) {
        const auto t0 = std::chrono::steady_clock::now();
        if constexpr (std::is_void_v<decltype(f())>) {
            f();
            rows.emplace_back(name, std::chrono::duration<double>(
                                        std::chrono::steady_clock::now() - t0).count());
        } else {
            auto r = f();
            rows.emplace_back(name, std::chrono::duration<double>(
                                        std::chrono::steady_clock::now() - t0).count());
            return r;
        }
    }
    void write_csv(const std::string& path) const {
        std::ofstream os(path);
        os << "stage,seconds\n";
        double total = 0.0;
        for (const auto& [name, secs] : rows) {
            os << name << "," << secs << "\n";
            total += secs;
        }
        os << "total," << total << "\n";
    }
};

std::string view_png_name(int u, int v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "view_%02d_%02d.png", u, v);
    return buf;
}

// ---- subcommand bodies ----

int cmd_synth(const Config& cfg, const std::string& outdir) {
    const RigSpec rig = rig_spec(cfg);
    const SceneSpec scene = scene_spec(cfg, rig);
    const HybridCapture cap = synth_hybrid_capture(scene, rig);
    fs::create_directories(outdir);
    lfc_write(cap.lr, outdir + "/lr.lfc");
    lfc_write(cap.gt_hr, outdir + "/gt.lfc");
    png_write(cap.hr, outdir + "/hr.png");
    std::ofstream os(outdir + "/geometry.csv");
    os << "focal_px,step_baseline_m,hr_offset_m,lr_factor\n";
    os << scene.focal_px << "," << rig.step_baseline_m << "," << rig.hr_offset_m << ","
       << rig.lr_factor << "\n";
    os << "plane,depth_m,hr_disparity_px,step_disparity_px\n";
    for (size_t k = 0; k < scene.planes.size(); ++k)
        os << k << "," << scene.planes[k].depth_m << ","
           << scene.focal_px * rig.hr_offset_m / scene.planes[k].depth_m << ","
           << scene.focal_px * rig.step_baseline_m / scene.planes[k].depth_m << "\n";
    std::cout << "synth: wrote lr.lfc, gt.lfc, hr.png, geometry.csv to " << outdir << "\n";
    return 0;
}

int cmd_decode(const Config& cfg, const std::string& raw_path, const std::string& outdir) {
    LensletGrid grid;
    grid.lenslets_y = cfg.get_int("grid_lenslets_y", 0);
    grid.lenslets_x = cfg.get_int("grid_lenslets_x", 0);
    grid.pixels_y = cfg.get_int("grid_pixels_y", 0);
    grid.pixels_x = cfg.get_int("grid_pixels_x", 0);
    grid.offset_y = cfg.get_int("grid_offset_y", 0);
    grid.offset_x = cfg.get_int("grid_offset_x", 0);
    const Image raw = png_read(raw_path);
    const LightField lf = decode_rect_lenslet(raw, grid);
    fs::create_directories(outdir);
    lfc_write(lf, outdir + "/decoded.lfc");
    const std::vector<float> gains = vignette_gain(lf);
    std::ofstream os(outdir + "/vignette.csv");
    os << "u,v,gain\n";
    for (int u = 0; u < lf.angular_rows; ++u)
        for (int v = 0; v < lf.angular_cols; ++v)
            os << u << "," << v << "," << gains[static_cast<size_t>(u) * lf.angular_cols + v]
               << "\n";
    std::cout << "decode: wrote decoded.lfc, vignette.csv to " << outdir << "\n";
    return 0;
}

int cmd_photomatch(const std::string& src_path, const std::string& target_path,
                   const std::string& outdir) {
    const Image src = png_read(src_path);
    const Image target = png_read(target_path);
    const Image out = imf_apply(src, imf_estimate(src, target));
    fs::create_directories(outdir);
    png_write(out, outdir + "/matched.png");
    std::cout << "photomatch: wrote matched.png to " << outdir << "\n";
    return 0;
}

int cmd_flow(const Config& cfg, const std::string& src_path, const std::string& dst_path,
             const std::string& outdir) {
    const Image src = png_read(src_path);
    const Image dst = png_read(dst_path);
    const FlowField f = flow_estimate(src, dst, flow_params(cfg));
    fs::create_directories(outdir);
    flow_write(f, outdir + "/flow.lfc");
    const ResidualStats pre = residual(src, dst);
    const ResidualStats post = residual(warp_backward(dst, f), src);
    std::ofstream os(outdir + "/residual.csv");
    os << "stage,mean,max\n";
    os << "pre_warp," << pre.mean << "," << pre.max << "\n";
    os << "post_warp," << post.mean << "," << post.max << "\n";
    std::cout << "flow: wrote flow.lfc, residual.csv to " << outdir << "\n";
    return 0;
}

int cmd_enhance(const Config& cfg, const std::string& lfc_path, const std::string& hr_path,
                const std::string& outdir) {
    const LightField lf = lfc_read(lfc_path);
    const Image hr = png_read(hr_path);
    EnhanceOptions opt;
    opt.flow = flow_params(cfg);
    opt.fusion = fusion_params(cfg);
    opt.apply_imf = cfg.get_flag("enhance_imf", true);
    opt.apply_vignette = cfg.get_flag("enhance_vignette", false);
    opt.threads = cfg.get_int("threads", 1);
    const EnhanceResult res = enhance_lightfield(lf, hr, opt);
    fs::create_directories(outdir);
    lfc_write(res.enhanced, outdir + "/enhanced.lfc");
    lfc_write(res.upsampled, outdir + "/upsampled.lfc");
    if (cfg.get_flag("enhance_write_views", false))
        for (int u = 0; u < res.enhanced.angular_rows; ++u)
            for (int v = 0; v < res.enhanced.angular_cols; ++v)
                png_write(res.enhanced.view(u, v), outdir + "/" + view_png_name(u, v));
    std::cout << "enhance: " << res.intra_flow_estimates << " intra + "
              << res.cross_flow_estimates << " cross flow estimates; wrote enhanced.lfc, "
              << "upsampled.lfc to " << outdir << "\n";
    return 0;
}

std::vector<bool> view_mask(const Config& cfg, const LightField& lf) {
    std::vector<bool> mask;
    if (cfg.get_flag("refocus_exclude_corners", false)) {
        const int U = lf.angular_rows, V = lf.angular_cols;
        mask.assign(static_cast<size_t>(U) * V, true);
        for (int u : {0, U - 1})
            for (int v : {0, V - 1}) mask[static_cast<size_t>(u) * V + v] = false;
    }
    return mask;
}

int cmd_refocus(const Config& cfg, const std::string& lfc_path, const std::string& outdir) {
    const LightField lf = lfc_read(lfc_path);
    fs::create_directories(outdir);
    RefocusParams p;
    p.boundary_normalize = cfg.get_flag("refocus_boundary_norm", true);
    p.mask = view_mask(cfg, lf);
    if (cfg.has("refocus_slope")) {
        p.slope = static_cast<float>(cfg.get_double("refocus_slope", 0.0));
        png_write(refocus(lf, p), outdir + "/refocus.png");
        std::cout << "refocus: wrote refocus.png (slope " << p.slope << ") to " << outdir << "\n";
        return 0;
    }
    const double lo = cfg.get_double("refocus_slope_min", -2.0);
    const double hi = cfg.get_double("refocus_slope_max", 2.0);
    const int steps = cfg.get_int("refocus_slope_steps", 9);
    std::ofstream os(outdir + "/sharpness.csv");
    os << "index,slope,sharpness\n";
    for (int i = 0; i < steps; ++i) {
        p.slope = static_cast<float>(steps > 1 ? lo + (hi - lo) * i / (steps - 1) : lo);
        const Image img = refocus(lf, p);
        char name[32];
        std::snprintf(name, sizeof(name), "refocus_%03d.png", i);
        png_write(img, outdir + "/" + name);
        os << i << "," << p.slope << "," << sharpness_vol(img) << "\n";
    }
    std::cout << "refocus: wrote " << steps << " slope-sweep images + sharpness.csv to "
              << outdir << "\n";
    return 0;
}

int cmd_epi(const Config& cfg, const std::string& lfc_path, const std::string& outdir) {
    const LightField lf = lfc_read(lfc_path);
    const std::string dir = cfg.get_string("epi_direction", "h");
    const int index = cfg.get_int("epi_index", lf.view_height() / 2);
    fs::create_directories(outdir);
    Image epi;
    if (dir == "h")
        epi = epi_horizontal(lf, index, cfg.get_int("epi_angular", lf.center_row()));
    else if (dir == "v")
        epi = epi_vertical(lf, index, cfg.get_int("epi_angular", lf.center_col()));
    else
        throw Error(ErrorCode::BadArgument, "epi_direction must be h or v");
    png_write(epi, outdir + "/epi.png");
    std::cout << "epi: wrote epi.png (" << epi.height << "x" << epi.width << ") to "
              << outdir << "\n";
    return 0;
}

int cmd_depth(const Config& cfg, const std::string& left_path, const std::string& right_path,
              const std::string& outdir) {
    const Image left = png_read(left_path);
    const Image right = png_read(right_path);
    StereoGeometry g{cfg.get_double("focal_px", 1000.0), cfg.get_double("baseline_m", 0.04)};
    DepthErrorModel m{cfg.get_double("eps_d", 1.0)};

    DisparityMap map;
    const std::string method = cfg.get_string("depth_method", "flow");
    if (method == "flow")
        map = disparity_from_flow(left, right, flow_params(cfg));
    else if (method == "block")
        map = disparity_block_match(left, right, cfg.get_int("depth_max_d", 64),
                                    cfg.get_int("depth_window", 9));
    else
        throw Error(ErrorCode::BadArgument, "depth_method must be flow or block");

    float lo = 0.0f, hi = 0.0f;
    bool first = true;
    for (size_t i = 0; i < map.d.size(); ++i)
        if (map.valid[i]) {
            lo = first ? map.d[i] : std::min(lo, map.d[i]);
            hi = first ? map.d[i] : std::max(hi, map.d[i]);
            first = false;
        }
    const float span = hi > lo ? hi - lo : 1.0f;
    Image vis(map.height, map.width, 1);
    for (size_t i = 0; i < map.d.size(); ++i)
        vis.data[i] = map.valid[i] ? (map.d[i] - lo) / span : 0.0f;
    fs::create_directories(outdir);
    png_write16(vis, outdir + "/disparity16.png");
    std::ofstream os(outdir + "/disparity_scale.csv");
    os << "min_px,max_px,focal_px,baseline_m,eps_d,max_range_m_at_bound\n";
    const double bound = cfg.get_double("error_bound_m", 0.1);
    os << lo << "," << hi << "," << g.focal_px << "," << g.baseline_m << ","
       << m.disparity_error_px << "," << max_range(g, m, bound) << "\n";
    std::cout << "depth: wrote disparity16.png (range " << lo << ".." << hi
              << " px), disparity_scale.csv to " << outdir << "\n";
    return 0;
}

int cmd_occlusion(const Config& cfg, const std::string& enhanced_path,
                  const std::string& lrup_path, const std::string& outdir) {
    const Image enhanced = png_read(enhanced_path);
    const Image lr_up = png_read(lrup_path);
    OcclusionParams p;
    p.threshold = static_cast<float>(cfg.get_double("occlusion_tau", p.threshold));
    p.dilate_radius = cfg.get_int("occlusion_dilate", 0);
    const auto mask = occlusion_mask(enhanced, lr_up, p);
    Image mask_img(enhanced.height, enhanced.width, 1);
    for (size_t i = 0; i < mask.size(); ++i) mask_img.data[i] = mask[i] ? 1.0f : 0.0f;
    fs::create_directories(outdir);
    png_write(mask_img, outdir + "/mask.png");
    png_write(occlusion_fill(enhanced, lr_up, mask), outdir + "/filled.png");
    std::cout << "occlusion: wrote mask.png, filled.png to " << outdir << "\n";
    return 0;
}

int cmd_pipeline(const Config& cfg, const std::string& outdir) {
    fs::create_directories(outdir);
    StageTimer timer;
    const RigSpec rig = rig_spec(cfg);
    const SceneSpec scene = scene_spec(cfg, rig);

    const HybridCapture cap =
        timer.run("synth", [&] { return synth_hybrid_capture(scene, rig); });
    lfc_write(cap.lr, outdir + "/lr.lfc");
    png_write(cap.hr, outdir + "/hr.png");

    EnhanceOptions opt;
    opt.flow = flow_params(cfg);
    opt.fusion = fusion_params(cfg);
    opt.apply_imf = cfg.get_flag("enhance_imf", true);
    opt.apply_vignette = cfg.get_flag("enhance_vignette", false);
    opt.threads = cfg.get_int("threads", 1);
    const EnhanceResult enh =
        timer.run("enhance", [&] { return enhance_lightfield(cap.lr, cap.hr, opt); });
    lfc_write(enh.enhanced, outdir + "/enhanced.lfc");

    timer.run("refocus_sweep", [&] {
        RefocusParams p;
        p.boundary_normalize = cfg.get_flag("refocus_boundary_norm", true);
        const double lo = cfg.get_double("refocus_slope_min", -2.0);
        const double hi = cfg.get_double("refocus_slope_max", 2.0);
        const int steps = cfg.get_int("refocus_slope_steps", 5);
        std::ofstream os(outdir + "/sharpness.csv");
        os << "index,slope,sharpness\n";
        for (int i = 0; i < steps; ++i) {
            p.slope = static_cast<float>(steps > 1 ? lo + (hi - lo) * i / (steps - 1) : lo);
            const Image img = refocus(enh.enhanced, p);
            char name[32];
            std::snprintf(name, sizeof(name), "refocus_%03d.png", i);
            png_write(img, outdir + "/" + name);
            os << i << "," << p.slope << "," << sharpness_vol(img) << "\n";
        }
    });

    timer.run("depth_profile", [&] {
        // hybrid pair: center LR view upsampled vs the HR camera image
        const Image& center_up = enh.upsampled.center_view();
        StereoGeometry g{scene.focal_px, rig.hr_offset_m};
        std::vector<double> depths;
        std::vector<std::vector<uint8_t>> masks;
        for (size_t k = 0; k < scene.planes.size(); ++k) {
            depths.push_back(scene.planes[k].depth_m);
            std::vector<uint8_t> mask(cap.center.plane_index.size(), 0);
            for (size_t i = 0; i < mask.size(); ++i)
                mask[i] = cap.center.plane_index[i] == static_cast<int16_t>(k) ? 1 : 0;
            masks.push_back(std::move(mask));
        }
        const auto rows =
            disparity_profile(center_up, cap.hr, g, depths, masks, flow_params(cfg));
        std::ofstream os(outdir + "/disparity_profile.csv");
        os << "depth_m,predicted_px,measured_px\n";
        for (const auto& r : rows)
            os << r.depth_m << "," << r.predicted_px << "," << r.measured_px << "\n";
    });

    timer.run("occlusion_fill", [&] {
        OcclusionParams p;
        p.threshold = static_cast<float>(cfg.get_double("occlusion_tau", p.threshold));
        p.dilate_radius = cfg.get_int("occlusion_dilate", 0);
        const Image& enhanced = enh.enhanced.center_view();
        const Image& lr_up = enh.upsampled.center_view();
        const auto mask = occlusion_mask(enhanced, lr_up, p);
        png_write(occlusion_fill(enhanced, lr_up, mask), outdir + "/center_filled.png");
    });

    timer.write_csv(outdir + "/manifest.csv");
    std::cout << "pipeline: " << enh.intra_flow_estimates << " intra + "
              << enh.cross_flow_estimates << " cross flow estimates; artifacts in "
              << outdir << " (manifest.csv has stage timings)\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hybrid light field toolkit"};
    app.require_subcommand(1);

    std::string config_path, outdir = ".";
    std::vector<std::string> overrides;
    app.add_option("-c,--config", config_path, "key=value config file");
    app.add_option("-o,--out", outdir, "output directory")->capture_default_str();
    app.add_option("--set", overrides, "override a config key (key=value), repeatable");

    std::string in1, in2;
    auto* synth = app.add_subcommand("synth", "render the synthetic hybrid capture");
    auto* decode = app.add_subcommand("decode", "decode a rectangular lenslet mosaic");
    decode->add_option("raw", in1, "raw mosaic PNG")->required();
    auto* photomatch = app.add_subcommand("photomatch", "histogram-match source toward target");
    photomatch->add_option("source", in1, "source PNG")->required();
    photomatch->add_option("target", in2, "target PNG")->required();
    auto* flow = app.add_subcommand("flow", "estimate optical flow between two images");
    flow->add_option("source", in1, "source PNG")->required();
    flow->add_option("dest", in2, "destination PNG")->required();
    auto* enhance = app.add_subcommand("enhance", "resolution-enhance a light field");
    enhance->add_option("lightfield", in1, "input LFC")->required();
    enhance->add_option("hr", in2, "high-resolution PNG")->required();
    auto* refocus_cmd = app.add_subcommand("refocus", "shift-and-sum refocusing");
    refocus_cmd->add_option("lightfield", in1, "input LFC")->required();
    auto* epi = app.add_subcommand("epi", "extract an epipolar-plane image");
    epi->add_option("lightfield", in1, "input LFC")->required();
    auto* depth = app.add_subcommand("depth", "disparity map from a rectified pair");
    depth->add_option("left", in1, "left PNG")->required();
    depth->add_option("right", in2, "right PNG")->required();
    auto* occl = app.add_subcommand("occlusion", "threshold residuals and fill");
    occl->add_option("enhanced", in1, "enhanced PNG")->required();
    occl->add_option("original", in2, "upsampled original PNG")->required();
    auto* pipeline = app.add_subcommand("pipeline", "full synthetic end-to-end run");

    // global options (-c/-o/--set) may follow the subcommand name
    for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        Config cfg;
        if (!config_path.empty()) cfg = Config::load(config_path);
        for (const std::string& o : overrides) cfg.set_line(o);
        cfg.validate(known_keys());

        if (app.got_subcommand(synth)) return cmd_synth(cfg, outdir);
        if (app.got_subcommand(decode)) return cmd_decode(cfg, in1, outdir);
        if (app.got_subcommand(photomatch)) return cmd_photomatch(in1, in2, outdir);
        if (app.got_subcommand(flow)) return cmd_flow(cfg, in1, in2, outdir);
        if (app.got_subcommand(enhance)) return cmd_enhance(cfg, in1, in2, outdir);
        if (app.got_subcommand(refocus_cmd)) return cmd_refocus(cfg, in1, outdir);
        if (app.got_subcommand(epi)) return cmd_epi(cfg, in1, outdir);
        if (app.got_subcommand(depth)) return cmd_depth(cfg, in1, in2, outdir);
        if (app.got_subcommand(occl)) return cmd_occlusion(cfg, in1, in2, outdir);
        if (app.got_subcommand(pipeline)) return cmd_pipeline(cfg, outdir);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
