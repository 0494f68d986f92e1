#pragma once

#include "ssfilt/filter.hpp"
#include "ssfilt/histogram.hpp"
#include "ssfilt/image.hpp"
#include "ssfilt/kappamap.hpp"
#include "ssfilt/resample.hpp"

namespace ssfilt {

/// Shared configuration of the application pipelines. Each pipeline overrides
/// only what its mode mandates (see blur_guided).
struct PipelineConfig {
    FilterParams filter;
    NltParams nlt;
    int entropy_window = 33;        // blur pipeline: local-entropy window
    int refine_radius = 32;         // blur pipeline: feature refinement radius
    double refine_epsilon = 0.01;   // blur pipeline: feature refinement epsilon
    int feather_radius = 4;         // face pipeline: mask feathering radius (0 = off)
    double feather_epsilon = 0.01;  // face pipeline: mask feathering epsilon
};

inline void validate(const PipelineConfig& cfg) {
    validate(cfg.filter);
    validate(cfg.nlt);
    require(cfg.entropy_window >= 1 && cfg.entropy_window % 2 == 1,
            "entropy_window: must be odd and >= 1");
    require(cfg.refine_radius >= 0, "refine_radius: must be >= 0");
    require(std::isfinite(cfg.refine_epsilon) && cfg.refine_epsilon > 0.0,
            "refine_epsilon: must be > 0");
    require(cfg.feather_radius >= 0, "feather_radius: must be >= 0");
    require(std::isfinite(cfg.feather_epsilon) && cfg.feather_epsilon > 0.0,
            "feather_epsilon: must be > 0");
}

/// Shallow depth of field: the gain falls off with distance, smoothing the
/// background progressively while slightly sharpening near objects.
/// Presets that work well: r=3, eps=10, 1 iteration, kappa in [0,2]
/// (strong background blur) or r=1, eps=100, 10 iterations (gentler look).
inline Image sdof(const Image& img, const ScalarField& depth, PipelineConfig cfg) {
    require(depth.width() == img.width() && depth.height() == img.height(),
            "sdof: depth map dimensions must match the image");
    validate(cfg);
    cfg.filter.kappa_map = gompertz_kappa(depth_to_feature(depth), cfg.nlt);
    return smooth_sharpen(img, cfg.filter);
}

enum class BlurMode {
    SmoothDefocus,   // blur defocused regions further (synthetic shallow DoF)
    SharpenDefocus,  // sharpen defocused regions (extend apparent DoF)
};

/// Blurriness-guided processing. In-focus regions are pinned to kappa = 1 by
/// placing the matching asymptote of the transform at 1: SmoothDefocus forces
/// kappa_max = 1 (in-focus feature -> 1), SharpenDefocus feeds the inverted
/// feature and forces kappa_min = 1.
inline Image blur_guided(const Image& img, PipelineConfig cfg, BlurMode mode) {
    validate(cfg);
    ScalarField t = blur_to_feature(img, cfg.entropy_window, cfg.refine_radius,
                                    cfg.refine_epsilon);
    NltParams nlt = cfg.nlt;
    if (mode == BlurMode::SmoothDefocus) {
        nlt.kappa_max = 1.0;
        nlt.kappa_min = std::min(nlt.kappa_min, 1.0);
    } else {
        nlt.kappa_min = 1.0;
        nlt.kappa_max = std::max(nlt.kappa_max, 1.0);
        for (std::size_t i = 0; i < t.size(); ++i) t[i] = 1.0 - t[i];
    }
    cfg.filter.kappa_map = gompertz_kappa(t, nlt);
    return smooth_sharpen(img, cfg.filter);
}

/// Face enhancement: sharpen everything except the protected (skin) region,
/// which is gently smoothed. Preset: r=3, eps=0.01, 1 iteration,
/// kappa_min=0.1, kappa_max=5.
inline Image face_enhance(const Image& img, const ScalarField& skin_mask, PipelineConfig cfg) {
    validate(cfg);
    const ScalarField t =
        mask_to_feature(skin_mask, cfg.feather_radius, cfg.feather_epsilon, img);
    cfg.filter.kappa_map = gompertz_kappa(t, cfg.nlt);
    return smooth_sharpen(img, cfg.filter);
}

/// Iterative guided fusion of a no-flash image against its flash guide:
/// J(0) = I, J(n) = filter(J(n-1), G). Preset: r=25, eps=1e-6, 10 iterations,
/// s=1, kappa=10 (kappa=0 with uniform weights is the plain guided filter
/// baseline, r=8, eps=0.004).
inline Image flash_noflash(const Image& noflash, const Image& flash, const PipelineConfig& cfg) {
    require(noflash.same_size(flash), "flash_noflash: image dimensions differ");
    validate(cfg);
    return smooth_sharpen(noflash, flash, cfg.filter);
}

/// Pan-sharpening: nearest-neighbor upsample of the MS bands to the PAN grid,
/// guided filtering of every band against the PAN plane, then per-band
/// histogram matching to the original MS image. Preset: r=11, eps=0.1,
/// kappa=1.2, scale=0.5.
inline Image pansharpen(const Image& ms, const ScalarField& pan, const PipelineConfig& cfg) {
    require(!ms.empty(), "pansharpen: empty MS image");
    require(pan.width() >= ms.width() && pan.height() >= ms.height(),
            "pansharpen: PAN must be at least as large as the MS image");
    validate(cfg);
    const Image up = upsample_nearest(ms, pan.width(), pan.height());
    const Image guide(pan);
    const Image filtered = smooth_sharpen(up, guide, cfg.filter);
    return histogram_match(filtered, ms);
}

}  // namespace ssfilt
