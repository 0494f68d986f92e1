#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "ssfilt/image.hpp"

namespace ssfilt {

struct MetricReport {
    std::string name;
    double value = 0.0;
    std::vector<double> per_channel;
    std::string region;
};

namespace detail {

inline void check_binary_mask(const ScalarField& mask, const Image& img, const char* who) {
    require(mask.width() == img.width() && mask.height() == img.height(),
            std::string(who) + ": mask dimensions must match the image");
    for (std::size_t i = 0; i < mask.size(); ++i)
        require(mask[i] == 0.0 || mask[i] == 1.0, std::string(who) + ": mask must be binary");
}

// Forward differences, zero at the last row/column; anchored at the pixel, so
// a mask restricts which anchor pixels contribute.
inline double tv_plane(const ScalarField& p, const ScalarField* mask) {
    const int w = p.width(), h = p.height();
    double sum = 0.0;
    for (int y = 0; y < h; ++y) {
        const double* r = p.row(y);
        const double* rn = y + 1 < h ? p.row(y + 1) : nullptr;
        const double* m = mask ? mask->row(y) : nullptr;
        for (int x = 0; x < w; ++x) {
            if (m && m[x] == 0.0) continue;
            if (x + 1 < w) sum += std::abs(r[x + 1] - r[x]);
            if (rn) sum += std::abs(rn[x] - r[x]);
        }
    }
    return sum;
}

}  // namespace detail

/// Total variation: sum over channels and pixels of |horizontal diff| +
/// |vertical diff|; a sharpness proxy. Optional binary mask restricts the sum.
inline MetricReport total_variation(const Image& img, const ScalarField* mask = nullptr) {
    require(!img.empty(), "total_variation: empty image");
    if (mask) detail::check_binary_mask(*mask, img, "total_variation");
    MetricReport rep;
    rep.name = "tv";
    if (mask) rep.region = "mask";
    for (int c = 0; c < img.channels(); ++c) {
        const double tv = detail::tv_plane(img.plane(c), mask);
        rep.per_channel.push_back(tv);
        rep.value += tv;
    }
    return rep;
}

/// Relative dimensionless global error in synthesis:
/// 100 * ratio * sqrt(mean_b((RMSE_b / mean_b(ref))^2)). Zero iff fused equals
/// the reference. `resolution_ratio` is the PAN-to-MS ground resolution ratio.
inline MetricReport ergas(const Image& fused, const Image& reference, double resolution_ratio) {
    require(fused.same_size(reference) && fused.channels() == reference.channels(),
            "ergas: fused and reference must have identical shape");
    require(std::isfinite(resolution_ratio) && resolution_ratio > 0.0,
            "ergas: resolution ratio must be > 0");
    MetricReport rep;
    rep.name = "ergas";
    double acc = 0.0;
    for (int c = 0; c < fused.channels(); ++c) {
        const ScalarField& f = fused.plane(c);
        const ScalarField& r = reference.plane(c);
        double se = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            const double d = f[i] - r[i];
            se += d * d;
        }
        const double rmse = std::sqrt(se / static_cast<double>(f.size()));
        const double mu = mean(r);
        require(mu > 0.0, "ergas: reference band mean must be > 0");
        const double rel = rmse / mu;
        rep.per_channel.push_back(rel);
        acc += rel * rel;
    }
    rep.value = 100.0 * resolution_ratio * std::sqrt(acc / fused.channels());
    return rep;
}

/// Mean, population variance and total variation over the mask=1 pixels.
/// value fields: grand mean over masked samples, channel-averaged variance,
/// and summed TV, with per-channel breakdowns.
struct RegionStats {
    MetricReport mean;
    MetricReport variance;
    MetricReport tv;
};

inline RegionStats region_stats(const Image& img, const ScalarField& mask) {
    require(!img.empty(), "region_stats: empty image");
    detail::check_binary_mask(mask, img, "region_stats");
    std::size_t count = 0;
    for (std::size_t i = 0; i < mask.size(); ++i) count += mask[i] == 1.0;
    require(count > 0, "region_stats: empty region");

    RegionStats out;
    out.mean.name = "region_mean";
    out.variance.name = "region_variance";
    out.tv.name = "region_tv";
    out.mean.region = out.variance.region = out.tv.region = "mask";
    for (int c = 0; c < img.channels(); ++c) {
        const ScalarField& p = img.plane(c);
        double s = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i)
            if (mask[i] == 1.0) s += p[i];
        const double m = s / static_cast<double>(count);
        // two-pass variance: exact zero on constant regions
        double acc = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (mask[i] != 1.0) continue;
            const double d = p[i] - m;
            acc += d * d;
        }
        const double var = acc / static_cast<double>(count);
        const double tv = detail::tv_plane(p, &mask);
        out.mean.per_channel.push_back(m);
        out.variance.per_channel.push_back(var);
        out.tv.per_channel.push_back(tv);
        out.mean.value += m;
        out.variance.value += var;
        out.tv.value += tv;
    }
    out.mean.value /= img.channels();
    out.variance.value /= img.channels();
    return out;
}

}  // namespace ssfilt
