#pragma once

#include "ssfilt/image.hpp"

namespace ssfilt {

/// Nearest-neighbor upscaling: output (x,y) copies source
/// (floor(x*sw/dw), floor(y*sh/dh)). Downscaling is rejected.
inline ScalarField upsample_nearest(const ScalarField& src, int new_w, int new_h) {
    require(new_w >= src.width() && new_h >= src.height(),
            "upsample_nearest: target dimensions must be >= source");
    ScalarField out(new_w, new_h);
    const long sw = src.width(), sh = src.height();
    for (int y = 0; y < new_h; ++y) {
        const double* sr = src.row(static_cast<int>(static_cast<long>(y) * sh / new_h));
        double* dr = out.row(y);
        for (int x = 0; x < new_w; ++x)
            dr[x] = sr[static_cast<long>(x) * sw / new_w];
    }
    return out;
}

inline Image upsample_nearest(const Image& src, int new_w, int new_h) {
    require(!src.empty(), "upsample_nearest: empty image");
    Image out(new_w, new_h, src.channels());
    for (int c = 0; c < src.channels(); ++c)
        out.plane(c) = upsample_nearest(src.plane(c), new_w, new_h);
    return out;
}

}  // namespace ssfilt
