#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ssfilt {

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

/// Single-channel raster of doubles, row-major.
class ScalarField {
public:
    ScalarField() = default;
    ScalarField(int width, int height, double fill = 0.0)
        : w_(width), h_(height) {
        require(width >= 1 && height >= 1, "ScalarField: dimensions must be >= 1");
        v_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
    }

    int width() const { return w_; }
    int height() const { return h_; }
    bool empty() const { return v_.empty(); }
    std::size_t size() const { return v_.size(); }

    double& at(int x, int y) { return v_[static_cast<std::size_t>(y) * w_ + x]; }
    double at(int x, int y) const { return v_[static_cast<std::size_t>(y) * w_ + x]; }
    double& operator[](std::size_t i) { return v_[i]; }
    double operator[](std::size_t i) const { return v_[i]; }

    double* data() { return v_.data(); }
    const double* data() const { return v_.data(); }
    double* row(int y) { return v_.data() + static_cast<std::size_t>(y) * w_; }
    const double* row(int y) const { return v_.data() + static_cast<std::size_t>(y) * w_; }

    bool same_size(const ScalarField& o) const { return w_ == o.w_ && h_ == o.h_; }

private:
    int w_ = 0;
    int h_ = 0;
    std::vector<double> v_;
};

/// Planar multi-channel image (1 = gray, 3 = RGB, 4 = RGBA), samples nominally
/// in [0,1]. Out-of-range values are allowed mid-pipeline and clamped only
/// when encoding to an integer format.
class Image {
public:
    Image() = default;
    Image(int width, int height, int channels, double fill = 0.0) {
        require(channels == 1 || channels == 3 || channels == 4,
                "Image: channel count must be 1, 3 or 4");
        planes_.reserve(channels);
        for (int c = 0; c < channels; ++c) planes_.emplace_back(width, height, fill);
    }
    explicit Image(ScalarField plane) { planes_.push_back(std::move(plane)); }

    int width() const { return planes_.empty() ? 0 : planes_[0].width(); }
    int height() const { return planes_.empty() ? 0 : planes_[0].height(); }
    int channels() const { return static_cast<int>(planes_.size()); }
    bool empty() const { return planes_.empty(); }

    ScalarField& plane(int c) { return planes_[c]; }
    const ScalarField& plane(int c) const { return planes_[c]; }

    bool same_size(const Image& o) const {
        return width() == o.width() && height() == o.height();
    }

private:
    std::vector<ScalarField> planes_;
};

inline double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

inline double mean(const ScalarField& f) {
    // Fixed summation order keeps the value independent of threading.
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += f[i];
    return s / static_cast<double>(f.size());
}

inline bool all_finite(const ScalarField& f) {
    for (std::size_t i = 0; i < f.size(); ++i)
        if (!std::isfinite(f[i])) return false;
    return true;
}

inline ScalarField map_field(const ScalarField& f, double (*fn)(double)) {
    ScalarField out(f.width(), f.height());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = fn(f[i]);
    return out;
}

/// ITU-R BT.601 luma; 1-channel images pass through.
inline ScalarField luma(const Image& img) {
    require(!img.empty(), "luma: empty image");
    if (img.channels() == 1) return img.plane(0);
    require(img.channels() >= 3, "luma: needs 1 or >=3 channels");
    const ScalarField& r = img.plane(0);
    const ScalarField& g = img.plane(1);
    const ScalarField& b = img.plane(2);
    ScalarField out(img.width(), img.height());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = 0.299 * r[i] + 0.587 * g[i] + 0.114 * b[i];
    return out;
}

}  // namespace ssfilt
