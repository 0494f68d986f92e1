#pragma once

#include <cmath>
#include <optional>

#include "ssfilt/boxfilter.hpp"
#include "ssfilt/color.hpp"
#include "ssfilt/image.hpp"

namespace ssfilt {

enum class WeightMode {
    Adaptive,  // w_k = 1 / (1 + (var_k / (s * mean var))^2), normalized per pixel
    Uniform,   // w_k = 1/N, the plain guided-filter aggregation
};

enum class ColorMode {
    PerChannel,  // filter each channel independently
    HsvValue,    // filter only the V channel of the HSV decomposition
};

/// Parameters of the smoothing-sharpening filter. kappa < 1 smooths,
/// kappa = 1 is the identity (self-guided), kappa > 1 sharpens. A per-pixel
/// kappa_map overrides the scalar gain.
struct FilterParams {
    int radius = 1;
    double epsilon = 1e-2;
    double kappa = 1.0;
    std::optional<ScalarField> kappa_map;
    double scale = 1.0;
    WeightMode weights = WeightMode::Adaptive;
    int iterations = 1;
    ColorMode color_mode = ColorMode::PerChannel;
};

/// Scalar invariants only; pass image dimensions to also check the kappa map.
inline void validate(const FilterParams& p, int width = 0, int height = 0) {
    require(p.radius >= 0, "radius: must be >= 0");
    require(std::isfinite(p.epsilon) && p.epsilon > 0.0, "epsilon: must be > 0");
    require(std::isfinite(p.scale) && p.scale > 0.0, "scale: must be > 0");
    require(p.iterations >= 1, "iterations: must be >= 1");
    if (p.kappa_map) {
        const ScalarField& k = *p.kappa_map;
        require(!k.empty(), "kappa_map: empty field");
        if (width > 0)
            require(k.width() == width && k.height() == height,
                    "kappa_map: dimensions must match the image");
        for (std::size_t i = 0; i < k.size(); ++i)
            require(std::isfinite(k[i]) && k[i] >= 0.0, "kappa_map: values must be finite and >= 0");
    } else {
        require(std::isfinite(p.kappa) && p.kappa >= 0.0, "kappa: must be finite and >= 0");
    }
}

/// Per-patch interpolation coefficients.
struct AlphaField {
    ScalarField alpha;  // MAP-optimal magnitude, always >= 0
    ScalarField beta;   // sign(phi) * alpha; empty in the self-guided form
    ScalarField a;      // plain guided-filter coefficient (signed in guided form)
};

namespace detail {

inline double kappa_at(const FilterParams& p, std::size_t i) {
    return p.kappa_map ? (*p.kappa_map)[i] : p.kappa;
}

}  // namespace detail

/// Self-guided coefficients: a = s2/(s2+eps),
/// alpha = (a + sqrt(a^2 + 4k(1-a)))/2.
inline AlphaField alpha_self(const ScalarField& sigma2, const FilterParams& params) {
    validate(params, sigma2.width(), sigma2.height());
    AlphaField f;
    f.a = ScalarField(sigma2.width(), sigma2.height());
    f.alpha = ScalarField(sigma2.width(), sigma2.height());
    const double eps = params.epsilon;
    for (std::size_t i = 0; i < sigma2.size(); ++i) {
        const double a = sigma2[i] / (sigma2[i] + eps);
        const double k = detail::kappa_at(params, i);
        f.a[i] = a;
        f.alpha[i] = 0.5 * (a + std::sqrt(a * a + 4.0 * k * (1.0 - a)));
    }
    return f;
}

/// Guided coefficients: a = phi/(vs2+eps),
/// alpha = (|a| + sqrt(a^2 + 4k*eps/(vs2+eps)))/2, beta = sign(phi)*alpha.
/// sign(0) = 0, so beta vanishes on zero-covariance patches.
inline AlphaField alpha_guided(const PatchStats& stats, const FilterParams& params) {
    validate(params, stats.phi.width(), stats.phi.height());
    AlphaField f;
    const int w = stats.phi.width(), h = stats.phi.height();
    f.a = ScalarField(w, h);
    f.alpha = ScalarField(w, h);
    f.beta = ScalarField(w, h);
    const double eps = params.epsilon;
    for (std::size_t i = 0; i < f.a.size(); ++i) {
        const double denom = stats.varsigma2[i] + eps;
        const double a = stats.phi[i] / denom;
        const double k = detail::kappa_at(params, i);
        const double alpha = 0.5 * (std::abs(a) + std::sqrt(a * a + 4.0 * k * eps / denom));
        f.a[i] = a;
        f.alpha[i] = alpha;
        f.beta[i] = stats.phi[i] > 0.0 ? alpha : (stats.phi[i] < 0.0 ? -alpha : 0.0);
    }
    return f;
}

namespace detail {

/// Patch-variance weights, or all-ones in Uniform mode (any constant cancels
/// in the normalized aggregation, so 1 stands in for 1/N exactly).
inline ScalarField aggregation_weights(const ScalarField& variance, const FilterParams& p) {
    ScalarField w(variance.width(), variance.height(), 1.0);
    if (p.weights == WeightMode::Uniform) return w;
    const double vbar = mean(variance);
    if (!(vbar > 0.0)) return w;  // constant image: all patches identical
    const double inv = 1.0 / (p.scale * vbar);
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double t = variance[i] * inv;
        w[i] = 1.0 / (1.0 + t * t);
    }
    return w;
}

}  // namespace detail

/// Weighted aggregation of the self-guided patch models:
/// J = (I * box(alpha*w) + box((1-alpha)*mu*w)) / box(w).
inline ScalarField aggregate_self(const ScalarField& I, const AlphaField& field,
                                  const ScalarField& mu, const ScalarField& sigma2,
                                  const FilterParams& params) {
    require(I.same_size(field.alpha) && I.same_size(mu) && I.same_size(sigma2),
            "aggregate_self: field dimensions differ");
    const ScalarField w = detail::aggregation_weights(sigma2, params);
    ScalarField aw(I.width(), I.height()), bw(I.width(), I.height());
    for (std::size_t i = 0; i < I.size(); ++i) {
        aw[i] = field.alpha[i] * w[i];
        bw[i] = (1.0 - field.alpha[i]) * mu[i] * w[i];
    }
    const ScalarField A = box_filter(aw, params.radius);
    const ScalarField B = box_filter(bw, params.radius);
    const ScalarField nor = box_filter(w, params.radius);
    ScalarField out(I.width(), I.height());
    for (std::size_t i = 0; i < I.size(); ++i)
        out[i] = (I[i] * A[i] + B[i]) / nor[i];
    return out;
}

/// Weighted aggregation of the guided patch models:
/// J = (G * box(beta*w) + box((mu - beta*nu)*w)) / box(w).
inline ScalarField aggregate_guided(const ScalarField& G, const AlphaField& field,
                                    const PatchStats& stats, const FilterParams& params) {
    require(G.same_size(field.beta) && G.same_size(stats.mu),
            "aggregate_guided: field dimensions differ");
    const ScalarField w = detail::aggregation_weights(stats.varsigma2, params);
    ScalarField aw(G.width(), G.height()), bw(G.width(), G.height());
    for (std::size_t i = 0; i < G.size(); ++i) {
        aw[i] = field.beta[i] * w[i];
        bw[i] = (stats.mu[i] - field.beta[i] * stats.nu[i]) * w[i];
    }
    const ScalarField A = box_filter(aw, params.radius);
    const ScalarField B = box_filter(bw, params.radius);
    const ScalarField nor = box_filter(w, params.radius);
    ScalarField out(G.width(), G.height());
    for (std::size_t i = 0; i < G.size(); ++i)
        out[i] = (G[i] * A[i] + B[i]) / nor[i];
    return out;
}

namespace detail {

inline ScalarField filter_plane_self(const ScalarField& plane, const FilterParams& params) {
    ScalarField cur = plane;
    for (int it = 0; it < params.iterations; ++it) {
        const PatchStats st = patch_stats(cur, cur, params.radius);
        const AlphaField af = alpha_self(st.sigma2, params);
        cur = aggregate_self(cur, af, st.mu, st.sigma2, params);
    }
    return cur;
}

inline ScalarField filter_plane_guided(const ScalarField& plane, const ScalarField& guide,
                                       const FilterParams& params) {
    ScalarField cur = plane;
    for (int it = 0; it < params.iterations; ++it) {
        const PatchStats st = patch_stats(cur, guide, params.radius);
        const AlphaField af = alpha_guided(st, params);
        cur = aggregate_guided(guide, af, st, params);
    }
    return cur;
}

}  // namespace detail

/// Self-guided smoothing-sharpening filter.
inline Image smooth_sharpen(const Image& input, const FilterParams& params) {
    require(!input.empty(), "smooth_sharpen: empty image");
    validate(params, input.width(), input.height());
    if (params.color_mode == ColorMode::HsvValue) {
        require(input.channels() == 3, "smooth_sharpen: HSV mode needs 3 channels");
        Image hsv = rgb_to_hsv(input);
        hsv.plane(2) = detail::filter_plane_self(hsv.plane(2), params);
        return hsv_to_rgb(hsv);
    }
    Image out(input.width(), input.height(), input.channels());
    for (int c = 0; c < input.channels(); ++c)
        out.plane(c) = detail::filter_plane_self(input.plane(c), params);
    return out;
}

/// Guided smoothing-sharpening filter. Channels pair index-wise; a
/// single-channel guide is broadcast to every channel of the input.
inline Image smooth_sharpen(const Image& input, const Image& guide, const FilterParams& params) {
    require(!input.empty() && !guide.empty(), "smooth_sharpen: empty image");
    require(input.same_size(guide), "smooth_sharpen: guide dimensions must match input");
    require(guide.channels() == input.channels() || guide.channels() == 1,
            "smooth_sharpen: guide must have 1 channel or match the input");
    validate(params, input.width(), input.height());
    if (params.color_mode == ColorMode::HsvValue) {
        require(input.channels() == 3 && guide.channels() == 3,
                "smooth_sharpen: HSV mode needs 3-channel input and guide");
        Image hsv = rgb_to_hsv(input);
        const Image ghsv = rgb_to_hsv(guide);
        hsv.plane(2) = detail::filter_plane_guided(hsv.plane(2), ghsv.plane(2), params);
        return hsv_to_rgb(hsv);
    }
    Image out(input.width(), input.height(), input.channels());
    for (int c = 0; c < input.channels(); ++c) {
        const ScalarField& g = guide.plane(guide.channels() == 1 ? 0 : c);
        out.plane(c) = detail::filter_plane_guided(input.plane(c), g, params);
    }
    return out;
}

/// Non-adaptive patch interpolation J = alpha*I + (1-alpha)*box(I): a plain
/// low-pass (0<=alpha<1) or unsharp-masking high-boost (alpha>1) filter.
inline Image filter_fixed_alpha(const Image& input, double alpha, int radius) {
    require(!input.empty(), "filter_fixed_alpha: empty image");
    require(radius >= 0, "filter_fixed_alpha: radius must be >= 0");
    Image out(input.width(), input.height(), input.channels());
    for (int c = 0; c < input.channels(); ++c) {
        const ScalarField& p = input.plane(c);
        const ScalarField m = box_filter(p, radius);
        ScalarField& o = out.plane(c);
        for (std::size_t i = 0; i < p.size(); ++i)
            o[i] = alpha * p[i] + (1.0 - alpha) * m[i];
    }
    return out;
}

/// Plain guided filter (the kappa = 0, uniform-weight special case, computed
/// by its own least-squares route): a = phi/(vs2+eps), b = mu - a*nu,
/// J = box(a)*G + box(b).
inline ScalarField guided_filter(const ScalarField& input, const ScalarField& guide,
                                 int radius, double epsilon) {
    require(std::isfinite(epsilon) && epsilon > 0.0, "guided_filter: epsilon must be > 0");
    const PatchStats st = patch_stats(input, guide, radius);
    ScalarField a(input.width(), input.height()), b(input.width(), input.height());
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = st.phi[i] / (st.varsigma2[i] + epsilon);
        b[i] = st.mu[i] - a[i] * st.nu[i];
    }
    const ScalarField am = box_filter(a, radius);
    const ScalarField bm = box_filter(b, radius);
    ScalarField out(input.width(), input.height());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = am[i] * guide[i] + bm[i];
    return out;
}

/// Per-pixel ratio of the filtered patch variance (around the patch mean of I)
/// to the input patch variance; > 1 marks the sharpening regime. The guide is
/// accepted for dimension checking only.
inline ScalarField variance_ratio(const ScalarField& I, const ScalarField& G,
                                  const ScalarField& J, int radius) {
    require(I.same_size(G) && I.same_size(J), "variance_ratio: dimensions differ");
    const ScalarField mu = box_filter(I, radius);
    ScalarField sq(I.width(), I.height());
    for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = I[i] * I[i];
    ScalarField sigma2 = box_filter(sq, radius);
    for (std::size_t i = 0; i < sq.size(); ++i)
        sigma2[i] = std::max(0.0, sigma2[i] - mu[i] * mu[i]);

    for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = J[i] * J[i];
    const ScalarField jsq = box_filter(sq, radius);
    const ScalarField jm = box_filter(J, radius);
    ScalarField out(I.width(), I.height());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double tau2 = std::max(0.0, jsq[i] - 2.0 * mu[i] * jm[i] + mu[i] * mu[i]);
        out[i] = tau2 / std::max(sigma2[i], 1e-12);
    }
    return out;
}

}  // namespace ssfilt
