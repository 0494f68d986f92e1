#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "ssfilt/entropy.hpp"
#include "ssfilt/filter.hpp"
#include "ssfilt/image.hpp"

namespace ssfilt {

/// Gompertz transform parameters mapping a feature map t in [0,1] to a gain
/// field in (kappa_min, kappa_max). Smoothing-only setups pin kappa_max = 1,
/// sharpening-only setups pin kappa_min = 1.
struct NltParams {
    double kappa_min = 0.0;
    double kappa_max = 2.0;
    double growth = 10.0;    // c, transition steepness; monotone increasing for c > 0
    double midpoint = 0.5;   // t0, feature value at the half-way gain
};

inline void validate(const NltParams& p) {
    require(std::isfinite(p.kappa_min) && p.kappa_min >= 0.0, "kappa_min: must be >= 0");
    require(std::isfinite(p.kappa_max), "kappa_max: must be finite");
    require(p.kappa_max >= p.kappa_min, "kappa_min, kappa_max: need kappa_min <= kappa_max");
    require(std::isfinite(p.growth), "growth: must be finite");
    require(std::isfinite(p.midpoint) && p.midpoint >= 0.0 && p.midpoint <= 1.0,
            "midpoint: must be in [0,1]");
}

/// kappa = (kappa_max - kappa_min) * exp(-0.69 * exp(-c (t - t0))) + kappa_min.
/// The 0.69 (vs ln 2) puts kappa(t0) within 0.16% of the mid-range value.
inline ScalarField gompertz_kappa(const ScalarField& t, const NltParams& params) {
    validate(params);
    ScalarField out(t.width(), t.height());
    const double range = params.kappa_max - params.kappa_min;
    for (std::size_t i = 0; i < t.size(); ++i)
        out[i] = range * std::exp(-0.69 * std::exp(-params.growth * (t[i] - params.midpoint))) +
                 params.kappa_min;
    return out;
}

inline double gompertz_kappa(double t, const NltParams& params) {
    ScalarField f(1, 1, t);
    return gompertz_kappa(f, params)[0];
}

/// Depth to feature: t = 1 - D, so near objects (small D) get large t and end
/// up on the sharpening side of the transform. Out-of-range depths are
/// clamped with a warning.
inline ScalarField depth_to_feature(const ScalarField& depth) {
    ScalarField out(depth.width(), depth.height());
    bool clamped = false;
    for (std::size_t i = 0; i < depth.size(); ++i) {
        require(std::isfinite(depth[i]), "depth_to_feature: depth must be finite");
        if (depth[i] < 0.0 || depth[i] > 1.0) clamped = true;
        out[i] = 1.0 - clamp01(depth[i]);
    }
    if (clamped)
        std::fprintf(stderr, "warning: depth values outside [0,1] were clamped\n");
    return out;
}

/// Blurriness feature from local entropy: low entropy marks defocused areas.
/// The raw map is refined with the plain guided filter against the image's
/// luma, then normalized to [0,1] between its 1st and 99th percentiles.
/// An image of uniform blurriness (entropy spread under ~3/4 bit) has no
/// focus contrast to stretch; it maps to a constant feature, 1 when the
/// entropy level says in-focus and 0 when it says defocused (a constant
/// image lands at 0, its entropy being zero everywhere).
inline ScalarField blur_to_feature(const Image& img, int window = 33, int refine_radius = 32,
                                   double refine_epsilon = 0.01) {
    const ScalarField g = luma(img);
    const ScalarField e = local_entropy(g, window);
    ScalarField refined =
        refine_radius > 0 ? guided_filter(e, g, refine_radius, refine_epsilon) : e;

    std::vector<double> sorted(refined.data(), refined.data() + refined.size());
    std::sort(sorted.begin(), sorted.end());
    const auto pct = [&](double q) {
        return sorted[static_cast<std::size_t>(std::llround(q * (sorted.size() - 1)))];
    };
    const double lo = pct(0.01), hi = pct(0.99);
    if (hi - lo < 0.75)
        return ScalarField(refined.width(), refined.height(), pct(0.5) >= 4.0 ? 1.0 : 0.0);
    for (std::size_t i = 0; i < refined.size(); ++i)
        refined[i] = clamp01((refined[i] - lo) / (hi - lo));
    return refined;
}

/// Protection-mask feature: t = 1 - mask (mask 1 marks the protected region,
/// e.g. skin), optionally feathered with the plain guided filter against the
/// image so the gain transitions smoothly across the boundary.
inline ScalarField mask_to_feature(const ScalarField& mask, int refine_radius,
                                   double refine_epsilon, const Image& guide) {
    require(mask.width() == guide.width() && mask.height() == guide.height(),
            "mask_to_feature: mask dimensions must match the guide image");
    ScalarField t(mask.width(), mask.height());
    for (std::size_t i = 0; i < mask.size(); ++i) {
        require(std::isfinite(mask[i]) && mask[i] >= 0.0 && mask[i] <= 1.0,
                "mask_to_feature: mask values must be in [0,1]");
        t[i] = 1.0 - mask[i];
    }
    if (refine_radius > 0) {
        t = guided_filter(t, luma(guide), refine_radius, refine_epsilon);
        for (std::size_t i = 0; i < t.size(); ++i) t[i] = clamp01(t[i]);
    }
    return t;
}

}  // namespace ssfilt
