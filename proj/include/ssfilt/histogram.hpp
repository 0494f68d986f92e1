#pragma once

#include <array>
#include <cmath>

#include "ssfilt/image.hpp"

namespace ssfilt {

namespace detail {

constexpr int kHistBins = 256;

inline int hist_bin(double v) {
    int b = static_cast<int>(std::floor(clamp01(v) * kHistBins));
    return std::min(b, kHistBins - 1);
}

inline std::array<double, kHistBins> normalized_histogram(const ScalarField& f) {
    std::array<double, kHistBins> h{};
    for (std::size_t i = 0; i < f.size(); ++i) h[hist_bin(f[i])] += 1.0;
    for (double& v : h) v /= static_cast<double>(f.size());
    return h;
}

}  // namespace detail

/// Monotone CDF matching with 256 bins: every pixel of a source bin moves to
/// the midpoint of the first reference bin whose CDF reaches the source CDF.
/// The reference may have different dimensions.
inline Image histogram_match(const Image& src, const Image& reference) {
    require(src.channels() == reference.channels(),
            "histogram_match: channel counts differ");
    Image out(src.width(), src.height(), src.channels());
    for (int c = 0; c < src.channels(); ++c) {
        const auto hs = detail::normalized_histogram(src.plane(c));
        const auto hr = detail::normalized_histogram(reference.plane(c));
        std::array<double, detail::kHistBins> cs{}, cr{};
        double a = 0.0, b = 0.0;
        for (int i = 0; i < detail::kHistBins; ++i) {
            a += hs[i];
            b += hr[i];
            cs[i] = a;
            cr[i] = b;
        }
        // Per-bin lookup: midpoint of the matched reference bin.
        std::array<double, detail::kHistBins> lut{};
        int j = 0;
        for (int i = 0; i < detail::kHistBins; ++i) {
            while (j < detail::kHistBins - 1 && cr[j] < cs[i]) ++j;
            lut[i] = (j + 0.5) / detail::kHistBins;
        }
        const ScalarField& sp = src.plane(c);
        ScalarField& op = out.plane(c);
        for (std::size_t i = 0; i < sp.size(); ++i) op[i] = lut[detail::hist_bin(sp[i])];
    }
    return out;
}

}  // namespace ssfilt
