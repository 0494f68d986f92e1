#pragma once

#include <cmath>
#include <vector>

#include "ssfilt/boxfilter.hpp"
#include "ssfilt/image.hpp"
#include "ssfilt/parallel.hpp"

namespace ssfilt {

/// Shannon entropy (bits) of the 256-bin histogram of 8-bit-quantized values
/// in the odd `window` around each pixel, symmetric padding. Range [0, 8].
inline ScalarField local_entropy(const ScalarField& img, int window) {
    require(window >= 1 && window % 2 == 1, "local_entropy: window must be odd and >= 1");
    const int r = window / 2;
    detail::check_margin(r, img.width(), img.height(), "local_entropy");

    const int w = img.width(), h = img.height();
    const ScalarField pad = pad_symmetric(img, r);

    // Quantize once: round(v*255) into 256 levels.
    std::vector<int> q(pad.size());
    for (std::size_t i = 0; i < pad.size(); ++i)
        q[i] = static_cast<int>(std::lround(clamp01(pad[i]) * 255.0));

    // c*log2(c) lookup for all possible in-window counts.
    const int n = window * window;
    std::vector<double> clog(n + 1, 0.0);
    for (int c = 2; c <= n; ++c) clog[c] = c * std::log2(static_cast<double>(c));
    const double log2n = std::log2(static_cast<double>(n));
    const int pw = w + 2 * r;

    ScalarField out(w, h);
    parallel_for(0, h, [&](int y) {
        // Sliding histogram along the row, with an incrementally maintained
        // sum of c*log2(c) so each pixel's entropy is O(1).
        std::vector<int> hist(256, 0);
        double csum = 0.0;
        auto add = [&](int v) {
            csum -= clog[hist[v]];
            csum += clog[++hist[v]];
        };
        auto remove = [&](int v) {
            csum -= clog[hist[v]];
            csum += clog[--hist[v]];
        };
        for (int dy = 0; dy < window; ++dy)
            for (int dx = 0; dx < window; ++dx) add(q[(y + dy) * static_cast<std::size_t>(pw) + dx]);
        double* orow = out.row(y);
        orow[0] = std::clamp(log2n - csum / n, 0.0, 8.0);
        for (int x = 1; x < w; ++x) {
            for (int dy = 0; dy < window; ++dy) {
                const std::size_t base = (y + dy) * static_cast<std::size_t>(pw);
                remove(q[base + x - 1]);
                add(q[base + x - 1 + window]);
            }
            orow[x] = std::clamp(log2n - csum / n, 0.0, 8.0);
        }
    });
    return out;
}

}  // namespace ssfilt
