#pragma once

#include <cmath>

#include "ssfilt/image.hpp"

namespace ssfilt {

/// Hexcone HSV. H is stored in [0,1) (fraction of a turn), S and V in [0,1].
inline Image rgb_to_hsv(const Image& img) {
    require(img.channels() == 3, "rgb_to_hsv: expected 3 channels");
    Image out(img.width(), img.height(), 3);
    const ScalarField& r = img.plane(0);
    const ScalarField& g = img.plane(1);
    const ScalarField& b = img.plane(2);
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double R = r[i], G = g[i], B = b[i];
        const double mx = std::max({R, G, B});
        const double mn = std::min({R, G, B});
        const double c = mx - mn;
        double h = 0.0;
        if (c > 0.0) {
            if (mx == R)
                h = std::fmod((G - B) / c, 6.0);
            else if (mx == G)
                h = (B - R) / c + 2.0;
            else
                h = (R - G) / c + 4.0;
            h /= 6.0;
            if (h < 0.0) h += 1.0;
        }
        out.plane(0)[i] = h;
        out.plane(1)[i] = mx > 0.0 ? c / mx : 0.0;
        out.plane(2)[i] = mx;
    }
    return out;
}

inline Image hsv_to_rgb(const Image& img) {
    require(img.channels() == 3, "hsv_to_rgb: expected 3 channels");
    Image out(img.width(), img.height(), 3);
    const ScalarField& hs = img.plane(0);
    const ScalarField& ss = img.plane(1);
    const ScalarField& vs = img.plane(2);
    for (std::size_t i = 0; i < hs.size(); ++i) {
        const double h = hs[i] * 6.0, s = ss[i], v = vs[i];
        const int sector = static_cast<int>(std::floor(h)) % 6;
        const double f = h - std::floor(h);
        const double p = v * (1.0 - s);
        const double q = v * (1.0 - s * f);
        const double t = v * (1.0 - s * (1.0 - f));
        double R, G, B;
        switch (sector < 0 ? sector + 6 : sector) {
            case 0: R = v; G = t; B = p; break;
            case 1: R = q; G = v; B = p; break;
            case 2: R = p; G = v; B = t; break;
            case 3: R = p; G = q; B = v; break;
            case 4: R = t; G = p; B = v; break;
            default: R = v; G = p; B = q; break;
        }
        out.plane(0)[i] = R;
        out.plane(1)[i] = G;
        out.plane(2)[i] = B;
    }
    return out;
}

}  // namespace ssfilt
