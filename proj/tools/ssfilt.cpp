// ssfilt: edge-aware smoothing-sharpening filter toolbox.
//
// One gain parameter kappa switches the filter between edge-preserving
// smoothing (0 <= kappa < 1), identity (kappa = 1, self-guided) and halo-free
// sharpening (kappa > 1), in self-guided and externally guided forms, plus
// the application pipelines built on it.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <string>

#include "ssfilt/ssfilt.hpp"

namespace {

using namespace ssfilt;

struct CommonFlags {
    CLI::Option* radius = nullptr;
    CLI::Option* epsilon = nullptr;
    CLI::Option* kappa = nullptr;
    CLI::Option* kappa_map = nullptr;
    CLI::Option* scale = nullptr;
    CLI::Option* iterations = nullptr;
    CLI::Option* weights = nullptr;
    CLI::Option* hsv = nullptr;
    CLI::Option* config = nullptr;

    int radius_v = 0;
    double epsilon_v = 0.0;
    double kappa_v = 0.0;
    std::string kappa_map_v;
    double scale_v = 0.0;
    int iterations_v = 0;
    std::string weights_v;
    std::string config_v;
};

/// Registers the shared filter flags on a subcommand. Defaults shown in help
/// come from the per-command preset baked into `base`.
CommonFlags add_filter_flags(CLI::App* cmd, const PipelineConfig& base) {
    CommonFlags f;
    f.radius_v = base.filter.radius;
    f.epsilon_v = base.filter.epsilon;
    f.kappa_v = base.filter.kappa;
    f.scale_v = base.filter.scale;
    f.iterations_v = base.filter.iterations;

    f.config = cmd->add_option("--config", f.config_v,
                               "key = value config file; explicit flags override it");
    f.radius = cmd->add_option("-r,--radius", f.radius_v, "patch radius")
                   ->capture_default_str();
    f.epsilon = cmd->add_option("-e,--epsilon", f.epsilon_v, "regularization epsilon (> 0)")
                    ->capture_default_str();
    f.kappa = cmd->add_option("-k,--kappa", f.kappa_v,
                              "gain: <1 smooths, 1 identity (self-guided), >1 sharpens")
                  ->capture_default_str();
    f.kappa_map = cmd->add_option("--kappa-map", f.kappa_map_v,
                                  "per-pixel gain field (PFM), excludes --kappa")
                      ->excludes(f.kappa);
    f.kappa->excludes(f.kappa_map);
    f.scale = cmd->add_option("-s,--scale", f.scale_v, "aggregation weight scale")
                  ->capture_default_str();
    f.iterations = cmd->add_option("-n,--iterations", f.iterations_v, "filter iterations")
                       ->capture_default_str();
    f.weights = cmd->add_option("--weights", f.weights_v,
                                "aggregation weights: adaptive | uniform (uniform gives the "
                                "plain guided-filter average)")
                    ->check(CLI::IsMember({"adaptive", "uniform"}));
    f.hsv = cmd->add_flag("--hsv", "filter the HSV value channel instead of each RGB channel");
    return f;
}

/// Preset -> config file -> explicit flags, later wins. Scalar invariants are
/// checked before the gain field is read, so bad flags fail before any I/O.
PipelineConfig resolve_config(const CommonFlags& f, PipelineConfig cfg) {
    if (f.config->count()) cfg = parse_config(f.config_v, cfg);
    if (f.radius->count()) cfg.filter.radius = f.radius_v;
    if (f.epsilon->count()) cfg.filter.epsilon = f.epsilon_v;
    if (f.kappa->count()) {
        cfg.filter.kappa = f.kappa_v;
        cfg.filter.kappa_map.reset();
    }
    if (f.scale->count()) cfg.filter.scale = f.scale_v;
    if (f.iterations->count()) cfg.filter.iterations = f.iterations_v;
    if (f.weights->count())
        cfg.filter.weights =
            f.weights_v == "uniform" ? WeightMode::Uniform : WeightMode::Adaptive;
    if (f.hsv->count()) cfg.filter.color_mode = ColorMode::HsvValue;
    validate(cfg.filter);
    if (f.kappa_map->count()) {
        cfg.filter.kappa_map = load_field(f.kappa_map_v);
        validate(cfg.filter);
    }
    return cfg;
}

struct NltFlags {
    CLI::Option *kmin = nullptr, *kmax = nullptr, *growth = nullptr, *midpoint = nullptr;
    double kmin_v = 0.0, kmax_v = 0.0, growth_v = 0.0, midpoint_v = 0.0;
};

NltFlags add_nlt_flags(CLI::App* cmd, const NltParams& base) {
    NltFlags f;
    f.kmin_v = base.kappa_min;
    f.kmax_v = base.kappa_max;
    f.growth_v = base.growth;
    f.midpoint_v = base.midpoint;
    f.kmin = cmd->add_option("--kappa-min", f.kmin_v, "gain at the low-feature asymptote")
                 ->capture_default_str();
    f.kmax = cmd->add_option("--kappa-max", f.kmax_v, "gain at the high-feature asymptote")
                 ->capture_default_str();
    f.growth = cmd->add_option("--growth", f.growth_v, "transform growth rate c")
                   ->capture_default_str();
    f.midpoint = cmd->add_option("--midpoint", f.midpoint_v, "feature value of half gain, t0")
                     ->capture_default_str();
    return f;
}

void resolve_nlt(const NltFlags& f, PipelineConfig& cfg) {
    if (f.kmin->count()) cfg.nlt.kappa_min = f.kmin_v;
    if (f.kmax->count()) cfg.nlt.kappa_max = f.kmax_v;
    if (f.growth->count()) cfg.nlt.growth = f.growth_v;
    if (f.midpoint->count()) cfg.nlt.midpoint = f.midpoint_v;
    validate(cfg.nlt);
}

int g_verbosity = 0;

void note(const std::string& msg) {
    if (g_verbosity > 0) std::cerr << "ssfilt: " << msg << '\n';
}

void print_report(const MetricReport& rep, bool csv) {
    if (csv) {
        std::printf("%s,%.12g", rep.name.c_str(), rep.value);
        for (double v : rep.per_channel) std::printf(",%.12g", v);
        std::printf("\n");
        return;
    }
    std::printf("%s = %.12g\n", rep.name.c_str(), rep.value);
    for (std::size_t c = 0; c < rep.per_channel.size(); ++c)
        std::printf("%s.channel%zu = %.12g\n", rep.name.c_str(), c, rep.per_channel[c]);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "ssfilt: unified edge-aware smoothing-sharpening filter.\n"
        "The gain kappa selects the behavior: kappa < 1 smooths without blurring\n"
        "edges, kappa = 1 leaves the image unchanged (self-guided), kappa > 1\n"
        "sharpens without halos."};
    app.require_subcommand(1);
    app.add_flag("-v,--verbose", g_verbosity, "print progress notes to stderr");

    int bits = 8;

    // ---- filter ----
    std::string in_path, out_path, guide_path;
    PipelineConfig filter_preset;
    filter_preset.filter.radius = 3;
    filter_preset.filter.epsilon = 0.01;
    filter_preset.filter.kappa = 1.0;
    CLI::App* cmd_filter = app.add_subcommand(
        "filter",
        "Apply the smoothing-sharpening filter. Smoothing preset: -r 11 -e 0.01 -k 0.01 -s 1; "
        "sharpening preset: -r 11 -e 0.01 -k 5 -s 1.");
    cmd_filter->add_option("input", in_path, "input image (PNG/PGM/PPM)")->required();
    cmd_filter->add_option("output", out_path, "output image")->required();
    CLI::Option* self_flag = cmd_filter->add_flag("--self", "self-guided (guide = input)");
    CLI::Option* guide_opt =
        cmd_filter->add_option("--guide", guide_path, "guidance image for the guided form");
    self_flag->excludes(guide_opt);
    guide_opt->excludes(self_flag);
    CommonFlags filter_flags = add_filter_flags(cmd_filter, filter_preset);
    cmd_filter->add_option("--bits", bits, "output bit depth (8 or 16)")
        ->check(CLI::IsMember({8, 16}));

    // ---- kappa ----
    std::string kappa_out, depth_path, mask_path, image_path, blur_path;
    PipelineConfig kappa_preset;
    CLI::App* cmd_kappa = app.add_subcommand(
        "kappa",
        "Build a per-pixel gain field from a depth map, a protection mask or local "
        "blurriness, via the sigmoid gain transform. Output is a PFM float map.");
    cmd_kappa->add_option("output", kappa_out, "output gain field (.pfm)")->required();
    CLI::Option* from_depth =
        cmd_kappa->add_option("--depth", depth_path, "depth map in [0,1] (gray PNG/PGM/PFM)");
    CLI::Option* from_mask =
        cmd_kappa->add_option("--mask", mask_path, "protection mask in [0,1]; needs --image");
    CLI::Option* from_blur =
        cmd_kappa->add_option("--blur", blur_path, "image whose local entropy drives the gain");
    CLI::Option* kappa_image = cmd_kappa->add_option(
        "--image", image_path, "image used to feather the mask boundary (mask source)");
    from_depth->excludes(from_mask)->excludes(from_blur);
    from_mask->excludes(from_blur);
    NltParams kappa_nlt;
    NltFlags kappa_nlt_flags = add_nlt_flags(cmd_kappa, kappa_nlt);
    int kappa_window = 33, kappa_refine_r = 32, kappa_feather_r = 4;
    double kappa_refine_eps = 0.01, kappa_feather_eps = 0.01;
    cmd_kappa->add_option("--window", kappa_window, "entropy window (odd; blur source)")
        ->capture_default_str();
    cmd_kappa->add_option("--refine-radius", kappa_refine_r, "feature refinement radius")
        ->capture_default_str();
    cmd_kappa->add_option("--refine-epsilon", kappa_refine_eps, "feature refinement epsilon")
        ->capture_default_str();
    cmd_kappa->add_option("--feather-radius", kappa_feather_r, "mask feathering radius (0 = off)")
        ->capture_default_str();
    cmd_kappa->add_option("--feather-epsilon", kappa_feather_eps, "mask feathering epsilon")
        ->capture_default_str();

    // ---- sdof ----
    PipelineConfig sdof_preset;
    sdof_preset.filter.radius = 3;
    sdof_preset.filter.epsilon = 10.0;
    sdof_preset.filter.iterations = 1;
    sdof_preset.nlt.kappa_min = 0.0;
    sdof_preset.nlt.kappa_max = 2.0;
    CLI::App* cmd_sdof = app.add_subcommand(
        "sdof",
        "Shallow depth of field from a depth map: smooth far, sharpen near. Preset "
        "r=3 e=10 n=1 kappa in [0,2] (strong blur); r=1 e=100 n=10 is a gentler look.");
    cmd_sdof->add_option("input", in_path, "input image")->required();
    cmd_sdof->add_option("output", out_path, "output image")->required();
    std::string sdof_depth;
    cmd_sdof->add_option("--depth", sdof_depth, "depth map in [0,1], near = 0")->required();
    CommonFlags sdof_flags = add_filter_flags(cmd_sdof, sdof_preset);
    NltFlags sdof_nlt = add_nlt_flags(cmd_sdof, sdof_preset.nlt);
    cmd_sdof->add_option("--bits", bits, "output bit depth")->check(CLI::IsMember({8, 16}));

    // ---- blur ----
    PipelineConfig blur_preset;
    blur_preset.filter.radius = 3;
    blur_preset.filter.epsilon = 0.01;
    blur_preset.nlt.kappa_min = 0.1;
    blur_preset.nlt.kappa_max = 5.0;
    CLI::App* cmd_blur = app.add_subcommand(
        "blur",
        "Blurriness-guided processing from local entropy (window 33, refinement r=32 "
        "e=0.01). In-focus areas are pinned to kappa = 1; --mode smooth blurs defocused "
        "areas further, --mode sharpen recovers them.");
    cmd_blur->add_option("input", in_path, "input image")->required();
    cmd_blur->add_option("output", out_path, "output image")->required();
    std::string blur_mode;
    cmd_blur->add_option("--mode", blur_mode, "smooth | sharpen")
        ->required()
        ->check(CLI::IsMember({"smooth", "sharpen"}));
    CommonFlags blur_flags = add_filter_flags(cmd_blur, blur_preset);
    NltFlags blur_nlt = add_nlt_flags(cmd_blur, blur_preset.nlt);
    int blur_window = blur_preset.entropy_window;
    int blur_refine_r = blur_preset.refine_radius;
    double blur_refine_eps = blur_preset.refine_epsilon;
    cmd_blur->add_option("--window", blur_window, "entropy window (odd)")->capture_default_str();
    cmd_blur->add_option("--refine-radius", blur_refine_r, "feature refinement radius")
        ->capture_default_str();
    cmd_blur->add_option("--refine-epsilon", blur_refine_eps, "feature refinement epsilon")
        ->capture_default_str();
    cmd_blur->add_option("--bits", bits, "output bit depth")->check(CLI::IsMember({8, 16}));

    // ---- face ----
    PipelineConfig face_preset;
    face_preset.filter.radius = 3;
    face_preset.filter.epsilon = 0.01;
    face_preset.filter.iterations = 1;
    face_preset.nlt.kappa_min = 0.1;
    face_preset.nlt.kappa_max = 5.0;
    CLI::App* cmd_face = app.add_subcommand(
        "face",
        "Face enhancement: sharpen outside the skin mask, gently smooth inside. "
        "Preset r=3 e=0.01 n=1 kappa in [0.1, 5], mask feathered with r=4 e=0.01.");
    cmd_face->add_option("input", in_path, "input image")->required();
    cmd_face->add_option("output", out_path, "output image")->required();
    std::string face_mask;
    cmd_face->add_option("--mask", face_mask, "skin/protection mask in [0,1]")->required();
    CommonFlags face_flags = add_filter_flags(cmd_face, face_preset);
    NltFlags face_nlt = add_nlt_flags(cmd_face, face_preset.nlt);
    int face_feather_r = face_preset.feather_radius;
    double face_feather_eps = face_preset.feather_epsilon;
    cmd_face->add_option("--feather-radius", face_feather_r, "mask feathering radius (0 = off)")
        ->capture_default_str();
    cmd_face->add_option("--feather-epsilon", face_feather_eps, "mask feathering epsilon")
        ->capture_default_str();
    cmd_face->add_option("--bits", bits, "output bit depth")->check(CLI::IsMember({8, 16}));

    // ---- flashfusion ----
    PipelineConfig flash_preset;
    flash_preset.filter.radius = 25;
    flash_preset.filter.epsilon = 1e-6;
    flash_preset.filter.kappa = 10.0;
    flash_preset.filter.scale = 1.0;
    flash_preset.filter.iterations = 10;
    CLI::App* cmd_flash = app.add_subcommand(
        "flashfusion",
        "Iterative guided fusion of a no-flash image with its flash guide. Preset "
        "r=25 e=1e-6 n=10 s=1 kappa=10; kappa=0 --weights uniform -n 1 -r 8 -e 0.004 "
        "is the plain guided-filter baseline.");
    std::string flash_path;
    cmd_flash->add_option("noflash", in_path, "no-flash (low light) image")->required();
    cmd_flash->add_option("flash", flash_path, "flash image (guide)")->required();
    cmd_flash->add_option("output", out_path, "output image")->required();
    CommonFlags flash_flags = add_filter_flags(cmd_flash, flash_preset);
    cmd_flash->add_option("--bits", bits, "output bit depth")->check(CLI::IsMember({8, 16}));

    // ---- pansharpen ----
    PipelineConfig pan_preset;
    pan_preset.filter.radius = 11;
    pan_preset.filter.epsilon = 0.1;
    pan_preset.filter.kappa = 1.2;
    pan_preset.filter.scale = 0.5;
    CLI::App* cmd_pan = app.add_subcommand(
        "pansharpen",
        "Fuse a low-resolution multispectral image with a high-resolution "
        "panchromatic plane. Preset r=11 e=0.1 kappa=1.2 s=0.5.");
    std::string pan_path;
    cmd_pan->add_option("ms", in_path, "multispectral image")->required();
    cmd_pan->add_option("pan", pan_path, "panchromatic plane (grayscale)")->required();
    cmd_pan->add_option("output", out_path, "output image at PAN resolution")->required();
    CommonFlags pan_flags = add_filter_flags(cmd_pan, pan_preset);
    cmd_pan->add_option("--bits", bits, "output bit depth")->check(CLI::IsMember({8, 16}));

    // ---- metric ----
    CLI::App* cmd_metric = app.add_subcommand("metric", "Image quality metrics.");
    cmd_metric->require_subcommand(1);
    bool metric_csv = false;
    std::string metric_mask;

    CLI::App* m_tv = cmd_metric->add_subcommand(
        "tv", "Total variation (sum of |forward differences|), a sharpness proxy.");
    m_tv->add_option("image", in_path, "image")->required();
    m_tv->add_option("--mask", metric_mask, "binary mask restricting the sum");
    m_tv->add_flag("--csv", metric_csv, "emit one CSV row instead of key-value lines");

    CLI::App* m_ergas = cmd_metric->add_subcommand(
        "ergas", "Spectral distortion of a fused image against a reference (0 is ideal).");
    std::string ergas_ref;
    double ergas_ratio = 4.0;
    m_ergas->add_option("fused", in_path, "fused image")->required();
    m_ergas->add_option("reference", ergas_ref, "reference image")->required();
    m_ergas->add_option("--ratio", ergas_ratio, "PAN-to-MS resolution ratio")
        ->capture_default_str();
    m_ergas->add_flag("--csv", metric_csv, "emit CSV rows");

    CLI::App* m_region = cmd_metric->add_subcommand(
        "region", "Mean, variance and TV inside a binary mask.");
    m_region->add_option("image", in_path, "image")->required();
    m_region->add_option("--mask", metric_mask, "binary mask")->required();
    m_region->add_flag("--csv", metric_csv, "emit CSV rows");

    try {
        app.parse(argc, argv);

        if (*cmd_filter) {
            if (!*self_flag && !*guide_opt)
                throw std::invalid_argument("filter: one of --self or --guide is required");
            const PipelineConfig cfg = resolve_config(filter_flags, filter_preset);
            note("loading " + in_path);
            const Image input = load_image(in_path);
            Image out;
            if (*self_flag) {
                out = smooth_sharpen(input, cfg.filter);
            } else {
                const Image guide = load_image(guide_path);
                out = smooth_sharpen(input, guide, cfg.filter);
            }
            save_image(out_path, out, bits);
            note("wrote " + out_path);
        } else if (*cmd_kappa) {
            PipelineConfig cfg;
            cfg.entropy_window = kappa_window;
            cfg.refine_radius = kappa_refine_r;
            cfg.refine_epsilon = kappa_refine_eps;
            cfg.feather_radius = kappa_feather_r;
            cfg.feather_epsilon = kappa_feather_eps;
            resolve_nlt(kappa_nlt_flags, cfg);
            ScalarField feature;
            if (*from_depth) {
                feature = depth_to_feature(load_field(depth_path));
            } else if (*from_mask) {
                if (!*kappa_image)
                    throw std::invalid_argument("kappa: --mask requires --image");
                feature = mask_to_feature(load_field(mask_path), cfg.feather_radius,
                                          cfg.feather_epsilon, load_image(image_path));
            } else if (*from_blur) {
                feature = blur_to_feature(load_image(blur_path), cfg.entropy_window,
                                          cfg.refine_radius, cfg.refine_epsilon);
            } else {
                throw std::invalid_argument("kappa: one of --depth, --mask, --blur is required");
            }
            save_field(kappa_out, gompertz_kappa(feature, cfg.nlt));
            note("wrote " + kappa_out);
        } else if (*cmd_sdof) {
            PipelineConfig cfg = resolve_config(sdof_flags, sdof_preset);
            resolve_nlt(sdof_nlt, cfg);
            const Image input = load_image(in_path);
            const ScalarField depth = load_field(sdof_depth);
            save_image(out_path, sdof(input, depth, cfg), bits);
        } else if (*cmd_blur) {
            PipelineConfig cfg = resolve_config(blur_flags, blur_preset);
            resolve_nlt(blur_nlt, cfg);
            cfg.entropy_window = blur_window;
            cfg.refine_radius = blur_refine_r;
            cfg.refine_epsilon = blur_refine_eps;
            const Image input = load_image(in_path);
            const BlurMode mode =
                blur_mode == "smooth" ? BlurMode::SmoothDefocus : BlurMode::SharpenDefocus;
            save_image(out_path, blur_guided(input, cfg, mode), bits);
        } else if (*cmd_face) {
            PipelineConfig cfg = resolve_config(face_flags, face_preset);
            resolve_nlt(face_nlt, cfg);
            cfg.feather_radius = face_feather_r;
            cfg.feather_epsilon = face_feather_eps;
            const Image input = load_image(in_path);
            const ScalarField mask = load_field(face_mask);
            save_image(out_path, face_enhance(input, mask, cfg), bits);
        } else if (*cmd_flash) {
            const PipelineConfig cfg = resolve_config(flash_flags, flash_preset);
            const Image noflash = load_image(in_path);
            const Image flash = load_image(flash_path);
            save_image(out_path, flash_noflash(noflash, flash, cfg), bits);
        } else if (*cmd_pan) {
            const PipelineConfig cfg = resolve_config(pan_flags, pan_preset);
            const Image ms = load_image(in_path);
            const ScalarField pan = load_field(pan_path);
            save_image(out_path, pansharpen(ms, pan, cfg), bits);
        } else if (*cmd_metric) {
            const Image img = load_image(in_path);
            if (*m_tv) {
                if (!metric_mask.empty()) {
                    const ScalarField mask = load_field(metric_mask);
                    print_report(total_variation(img, &mask), metric_csv);
                } else {
                    print_report(total_variation(img), metric_csv);
                }
            } else if (*m_ergas) {
                const Image ref = load_image(ergas_ref);
                print_report(ergas(img, ref, ergas_ratio), metric_csv);
            } else if (*m_region) {
                const ScalarField mask = load_field(metric_mask);
                const RegionStats rs = region_stats(img, mask);
                print_report(rs.mean, metric_csv);
                print_report(rs.variance, metric_csv);
                print_report(rs.tv, metric_csv);
            }
        }
        return 0;
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();  // delegates to the selected subcommand
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        std::cout << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "ssfilt: " << e.what() << '\n';
        return 2;
    } catch (const io_error& e) {
        std::cerr << "ssfilt: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "ssfilt: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "ssfilt: " << e.what() << '\n';
        return 1;
    }
}
