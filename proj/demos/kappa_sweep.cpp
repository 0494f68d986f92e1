// Writes a sweep of gain settings applied to a synthetic test card, to eyeball
// the smoothing-to-sharpening range of the filter:
//   kappa 0.01 and 0.1 smooth, 1 is the identity, 5 and 7.5 sharpen.
//
//   ./kappa_sweep [outdir]

#include <cstdio>
#include <filesystem>
#include <random>
#include <string>

#include "ssfilt/ssfilt.hpp"

using namespace ssfilt;

namespace {

Image test_card(int n) {
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> noise(-0.08, 0.08);
    Image img(n, n, 3);
    for (int y = 0; y < n; ++y) {
        for (int x = 0; x < n; ++x) {
            const bool disk = (x - n / 3.0) * (x - n / 3.0) + (y - n / 3.0) * (y - n / 3.0) <
                              n * n / 25.0;
            const bool stripe = ((x + 2 * y) / 12) % 2 == 0;
            double base[3] = {0.25 + 0.5 * x / n, 0.65 - 0.4 * y / n, stripe ? 0.7 : 0.35};
            if (disk) {
                base[0] = 0.85;
                base[1] = 0.3;
                base[2] = 0.25;
            }
            for (int c = 0; c < 3; ++c)
                img.plane(c).at(x, y) = clamp01(base[c] + noise(rng));
        }
    }
    return img;
}

}  // namespace

int main(int argc, char** argv) {
    const std::string outdir = argc > 1 ? argv[1] : "kappa_sweep_out";
    std::filesystem::create_directories(outdir);

    const Image card = test_card(256);
    save_image(outdir + "/input.png", card);

    FilterParams p;
    p.radius = 11;
    p.epsilon = 0.01;
    p.scale = 1.0;
    for (double kappa : {0.01, 0.1, 1.0, 5.0, 7.5}) {
        p.kappa = kappa;
        const Image out = smooth_sharpen(card, p);
        char name[64];
        std::snprintf(name, sizeof(name), "/kappa_%g.png", kappa);
        save_image(outdir + name, out);
        std::printf("kappa %-5g tv %.1f\n", kappa, total_variation(out).value);
    }
    std::printf("wrote %s\n", outdir.c_str());
    return 0;
}
