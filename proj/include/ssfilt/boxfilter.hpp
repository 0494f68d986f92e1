#pragma once

#include <cmath>

#include "ssfilt/image.hpp"
#include "ssfilt/parallel.hpp"

namespace ssfilt {

/// Half-sample symmetric mirror (MATLAB 'symmetric'): the edge sample is
/// duplicated, so index -1 maps to 0, -2 to 1, n to n-1. Valid for any i.
inline int mirror_index(int i, int n) {
    const int period = 2 * n;
    int m = i % period;
    if (m < 0) m += period;
    return m < n ? m : period - 1 - m;
}

namespace detail {

// A margin past one mirror period would repeat reflected content. Dimensions
// of size 1 replicate their single sample and accept any margin.
inline void check_margin(int margin, int w, int h, const char* who) {
    require(margin >= 0, std::string(who) + ": margin/radius must be >= 0");
    if (w > 1) require(margin < w, std::string(who) + ": margin too large for width");
    if (h > 1) require(margin < h, std::string(who) + ": margin too large for height");
}

}  // namespace detail

inline ScalarField pad_symmetric(const ScalarField& src, int margin) {
    detail::check_margin(margin, src.width(), src.height(), "pad_symmetric");
    if (margin == 0) return src;
    const int w = src.width(), h = src.height();
    ScalarField out(w + 2 * margin, h + 2 * margin);
    for (int y = 0; y < h + 2 * margin; ++y) {
        const double* sr = src.row(mirror_index(y - margin, h));
        double* dr = out.row(y);
        for (int x = 0; x < w + 2 * margin; ++x)
            dr[x] = sr[mirror_index(x - margin, w)];
    }
    return out;
}

/// Mean over the (2r+1)x(2r+1) window centered at each pixel, symmetric
/// padding at the borders. Two running-sum passes, so per-pixel cost does not
/// depend on the radius.
inline ScalarField box_filter(const ScalarField& src, int radius) {
    detail::check_margin(radius, src.width(), src.height(), "box_filter");
    if (radius == 0) return src;

    const int w = src.width(), h = src.height();
    const int d = 2 * radius + 1;
    const ScalarField pad = pad_symmetric(src, radius);

    // Horizontal window sums: one rolling sum per padded row.
    ScalarField tmp(w, h + 2 * radius);
    parallel_for(0, h + 2 * radius, [&](int y) {
        const double* pr = pad.row(y);
        double* tr = tmp.row(y);
        double s = 0.0;
        for (int x = 0; x < d; ++x) s += pr[x];
        tr[0] = s;
        for (int x = 1; x < w; ++x) {
            s += pr[x + d - 1] - pr[x - 1];
            tr[x] = s;
        }
    });

    // Vertical window sums: rolling sums marching down, one per column.
    // Each column's sum depends only on that column, so the column split
    // cannot change results.
    ScalarField out(w, h);
    const double inv_n = 1.0 / (static_cast<double>(d) * d);
    parallel_ranges(0, w, [&](int x0, int x1) {
        std::vector<double> colsum(static_cast<std::size_t>(x1 - x0), 0.0);
        for (int y = 0; y < d; ++y) {
            const double* tr = tmp.row(y);
            for (int x = x0; x < x1; ++x) colsum[x - x0] += tr[x];
        }
        double* orow = out.row(0);
        for (int x = x0; x < x1; ++x) orow[x] = colsum[x - x0] * inv_n;
        for (int y = 1; y < h; ++y) {
            const double* add = tmp.row(y + d - 1);
            const double* sub = tmp.row(y - 1);
            orow = out.row(y);
            for (int x = x0; x < x1; ++x) {
                colsum[x - x0] += add[x] - sub[x];
                orow[x] = colsum[x - x0] * inv_n;
            }
        }
    });
    return out;
}

/// Per-pixel patch moments of an image/guide pair over (2r+1)^2 windows:
/// means, variances and covariance, computed as E[XY] - E[X]E[Y].
struct PatchStats {
    ScalarField mu;         // patch mean of I
    ScalarField nu;         // patch mean of G
    ScalarField sigma2;     // patch variance of I, clamped >= 0
    ScalarField varsigma2;  // patch variance of G, clamped >= 0
    ScalarField phi;        // patch covariance of I and G
    int radius = 0;
};

inline PatchStats patch_stats(const ScalarField& I, const ScalarField& G, int radius) {
    require(I.same_size(G), "patch_stats: image and guide dimensions differ");
    PatchStats st;
    st.radius = radius;
    st.mu = box_filter(I, radius);

    const std::size_t n = I.size();
    ScalarField prod(I.width(), I.height());
    for (std::size_t i = 0; i < n; ++i) prod[i] = I[i] * I[i];
    st.sigma2 = box_filter(prod, radius);
    for (std::size_t i = 0; i < n; ++i)
        st.sigma2[i] = std::max(0.0, st.sigma2[i] - st.mu[i] * st.mu[i]);

    if (&I == &G) {
        // Self-guided: identical moments by definition, and bit-identical here.
        st.nu = st.mu;
        st.varsigma2 = st.sigma2;
        st.phi = st.sigma2;
        return st;
    }

    st.nu = box_filter(G, radius);
    for (std::size_t i = 0; i < n; ++i) prod[i] = G[i] * G[i];
    st.varsigma2 = box_filter(prod, radius);
    for (std::size_t i = 0; i < n; ++i)
        st.varsigma2[i] = std::max(0.0, st.varsigma2[i] - st.nu[i] * st.nu[i]);

    for (std::size_t i = 0; i < n; ++i) prod[i] = I[i] * G[i];
    st.phi = box_filter(prod, radius);
    for (std::size_t i = 0; i < n; ++i) st.phi[i] -= st.mu[i] * st.nu[i];
    return st;
}

}  // namespace ssfilt
