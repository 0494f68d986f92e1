#pragma once

#include <png.h>

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "ssfilt/image.hpp"

namespace ssfilt {

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string lower_ext(const std::string& path) {
    std::string e = std::filesystem::path(path).extension().string();
    for (char& c : e) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return e;
}

/// Round-half-up quantization of a clamped sample.
inline unsigned quantize(double v, unsigned maxval) {
    return static_cast<unsigned>(clamp01(v) * maxval + 0.5);
}

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

// ---- PNG ----

inline Image load_png(const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "rb"));
    if (!f) throw io_error("cannot open " + path);

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw io_error("libpng init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw io_error("libpng init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw io_error("failed to decode PNG " + path);
    }
    png_init_io(png, f.get());
    png_read_png(png, info,
                 PNG_TRANSFORM_EXPAND | PNG_TRANSFORM_PACKING | PNG_TRANSFORM_SWAP_ENDIAN,
                 nullptr);

    const int w = static_cast<int>(png_get_image_width(png, info));
    const int h = static_cast<int>(png_get_image_height(png, info));
    const int depth = png_get_bit_depth(png, info);
    const int nch = png_get_channels(png, info);
    png_bytepp rows = png_get_rows(png, info);

    // Gray+alpha collapses to gray; the alpha plane has no consumer here.
    const int out_ch = nch == 2 ? 1 : nch;
    Image img(w, h, out_ch);
    const double scale = depth == 16 ? 1.0 / 65535.0 : 1.0 / 255.0;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            for (int c = 0; c < out_ch; ++c) {
                double v;
                if (depth == 16) {
                    const auto* r = reinterpret_cast<const std::uint16_t*>(rows[y]);
                    v = r[x * nch + c] * scale;
                } else {
                    v = rows[y][x * nch + c] * scale;
                }
                img.plane(c).at(x, y) = v;
            }
        }
    }
    png_destroy_read_struct(&png, &info, nullptr);
    return img;
}

inline void write_png(const std::string& path, const Image& img, int bits) {
    const int w = img.width(), h = img.height(), nch = img.channels();
    int color_type;
    switch (nch) {
        case 1: color_type = PNG_COLOR_TYPE_GRAY; break;
        case 3: color_type = PNG_COLOR_TYPE_RGB; break;
        default: color_type = PNG_COLOR_TYPE_RGBA; break;
    }
    const unsigned maxval = bits == 16 ? 65535u : 255u;

    // Interleaved big-endian sample buffer (PNG network byte order).
    const std::size_t row_bytes = static_cast<std::size_t>(w) * nch * (bits / 8);
    std::vector<unsigned char> buf(row_bytes * h);
    std::vector<png_bytep> rows(h);
    for (int y = 0; y < h; ++y) {
        rows[y] = buf.data() + row_bytes * y;
        for (int x = 0; x < w; ++x) {
            for (int c = 0; c < nch; ++c) {
                const unsigned q = quantize(img.plane(c).at(x, y), maxval);
                unsigned char* out = rows[y] + (static_cast<std::size_t>(x) * nch + c) * (bits / 8);
                if (bits == 16) {
                    out[0] = static_cast<unsigned char>(q >> 8);
                    out[1] = static_cast<unsigned char>(q & 0xff);
                } else {
                    out[0] = static_cast<unsigned char>(q);
                }
            }
        }
    }

    FilePtr f(std::fopen(path.c_str(), "wb"));
    if (!f) throw io_error("cannot create " + path);
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw io_error("libpng init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw io_error("libpng init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw io_error("failed to encode PNG " + path);
    }
    png_init_io(png, f.get());
    png_set_IHDR(png, info, w, h, bits, color_type, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_set_rows(png, info, rows.data());
    png_write_png(png, info, PNG_TRANSFORM_IDENTITY, nullptr);
    png_destroy_write_struct(&png, &info);
}

// ---- PGM / PPM ----

inline int pnm_token(std::istream& in) {
    // Next integer token, skipping whitespace and '#' comment lines.
    for (;;) {
        int ch = in.peek();
        if (ch == '#') {
            std::string line;
            std::getline(in, line);
        } else if (ch != EOF && std::isspace(static_cast<unsigned char>(ch))) {
            in.get();
        } else {
            break;
        }
    }
    int v = -1;
    in >> v;
    if (!in) throw io_error("malformed PNM header");
    return v;
}

inline Image load_pnm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path);
    char p = 0, kind = 0;
    in >> p >> kind;
    if (p != 'P' || (kind != '2' && kind != '3' && kind != '5' && kind != '6'))
        throw io_error("unsupported PNM magic in " + path);
    const bool color = kind == '3' || kind == '6';
    const bool ascii = kind == '2' || kind == '3';
    const int w = pnm_token(in);
    const int h = pnm_token(in);
    const int maxval = pnm_token(in);
    if (w < 1 || h < 1 || maxval < 1 || maxval > 65535)
        throw io_error("invalid PNM header in " + path);
    const int nch = color ? 3 : 1;
    Image img(w, h, nch);
    const double scale = 1.0 / maxval;

    if (ascii) {
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x)
                for (int c = 0; c < nch; ++c) img.plane(c).at(x, y) = pnm_token(in) * scale;
        return img;
    }

    in.get();  // single whitespace after maxval
    const int bytes = maxval > 255 ? 2 : 1;
    std::vector<unsigned char> row(static_cast<std::size_t>(w) * nch * bytes);
    for (int y = 0; y < h; ++y) {
        in.read(reinterpret_cast<char*>(row.data()), static_cast<std::streamsize>(row.size()));
        if (!in) throw io_error("truncated PNM data in " + path);
        for (int x = 0; x < w; ++x) {
            for (int c = 0; c < nch; ++c) {
                const std::size_t i = (static_cast<std::size_t>(x) * nch + c) * bytes;
                const unsigned v = bytes == 2 ? (row[i] << 8 | row[i + 1]) : row[i];
                img.plane(c).at(x, y) = v * scale;
            }
        }
    }
    return img;
}

inline void write_pnm(const std::string& path, const Image& img, int bits) {
    const int nch = img.channels();
    if (nch != 1 && nch != 3) throw io_error("PNM supports 1 or 3 channels");
    const unsigned maxval = bits == 16 ? 65535u : 255u;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot create " + path);
    out << (nch == 1 ? "P5" : "P6") << '\n'
        << img.width() << ' ' << img.height() << '\n'
        << maxval << '\n';
    const int bytes = bits == 16 ? 2 : 1;
    std::vector<unsigned char> row(static_cast<std::size_t>(img.width()) * nch * bytes);
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            for (int c = 0; c < nch; ++c) {
                const unsigned q = quantize(img.plane(c).at(x, y), maxval);
                const std::size_t i = (static_cast<std::size_t>(x) * nch + c) * bytes;
                if (bytes == 2) {
                    row[i] = static_cast<unsigned char>(q >> 8);
                    row[i + 1] = static_cast<unsigned char>(q & 0xff);
                } else {
                    row[i] = static_cast<unsigned char>(q);
                }
            }
        }
        out.write(reinterpret_cast<const char*>(row.data()),
                  static_cast<std::streamsize>(row.size()));
    }
    if (!out) throw io_error("failed writing " + path);
}

// ---- PFM (grayscale float map) ----

inline bool host_little_endian() {
    const std::uint16_t one = 1;
    unsigned char b;
    std::memcpy(&b, &one, 1);
    return b == 1;
}

inline ScalarField load_pfm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path);
    std::string magic;
    in >> magic;
    if (magic != "Pf") throw io_error("expected grayscale PFM (Pf) in " + path);
    int w = 0, h = 0;
    double scale = 0.0;
    in >> w >> h >> scale;
    if (!in || w < 1 || h < 1 || scale == 0.0) throw io_error("invalid PFM header in " + path);
    in.get();  // single whitespace before data
    const bool file_le = scale < 0.0;
    ScalarField out(w, h);
    std::vector<float> row(static_cast<std::size_t>(w));
    // PFM stores rows bottom-to-top.
    for (int y = h - 1; y >= 0; --y) {
        in.read(reinterpret_cast<char*>(row.data()),
                static_cast<std::streamsize>(row.size() * sizeof(float)));
        if (!in) throw io_error("truncated PFM data in " + path);
        if (file_le != host_little_endian()) {
            for (float& v : row) {
                std::uint32_t u;
                std::memcpy(&u, &v, 4);
                u = __builtin_bswap32(u);
                std::memcpy(&v, &u, 4);
            }
        }
        for (int x = 0; x < w; ++x) out.at(x, y) = row[x];
    }
    return out;
}

inline void write_pfm(const std::string& path, const ScalarField& field) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot create " + path);
    out << "Pf\n" << field.width() << ' ' << field.height() << '\n' << "-1.0\n";
    std::vector<float> row(static_cast<std::size_t>(field.width()));
    for (int y = field.height() - 1; y >= 0; --y) {
        for (int x = 0; x < field.width(); ++x) row[x] = static_cast<float>(field.at(x, y));
        if (!host_little_endian()) {
            for (float& v : row) {
                std::uint32_t u;
                std::memcpy(&u, &v, 4);
                u = __builtin_bswap32(u);
                std::memcpy(&v, &u, 4);
            }
        }
        out.write(reinterpret_cast<const char*>(row.data()),
                  static_cast<std::streamsize>(row.size() * sizeof(float)));
    }
    if (!out) throw io_error("failed writing " + path);
}

/// Writes via a temp file in the same directory, then renames into place, so
/// a failed run never leaves a partial output.
template <typename WriteFn>
void atomic_write(const std::string& path, WriteFn&& fn) {
    const std::string tmp = path + ".tmp";
    try {
        fn(tmp);
        std::filesystem::rename(tmp, path);
    } catch (...) {
        std::error_code ec;
        std::filesystem::remove(tmp, ec);
        throw;
    }
}

}  // namespace detail

/// Loads a PNG (8/16-bit) or PGM/PPM image, samples scaled to [0,1].
inline Image load_image(const std::string& path) {
    const std::string ext = detail::lower_ext(path);
    if (ext == ".png") return detail::load_png(path);
    if (ext == ".pgm" || ext == ".ppm" || ext == ".pnm") return detail::load_pnm(path);
    if (ext == ".pfm") return Image(detail::load_pfm(path));
    throw io_error("unsupported image format: " + path);
}

/// Saves to PNG or PGM/PPM (clamped to [0,1], round-half-up quantization) or,
/// for a 1-channel image with a .pfm path, to a float map. Atomic.
inline void save_image(const std::string& path, const Image& img, int bits = 8) {
    require(bits == 8 || bits == 16, "save_image: bit depth must be 8 or 16");
    require(!img.empty(), "save_image: empty image");
    const std::string ext = detail::lower_ext(path);
    detail::atomic_write(path, [&](const std::string& tmp) {
        if (ext == ".png") {
            detail::write_png(tmp, img, bits);
        } else if (ext == ".pgm" || ext == ".ppm" || ext == ".pnm") {
            detail::write_pnm(tmp, img, bits);
        } else if (ext == ".pfm") {
            require(img.channels() == 1, "save_image: PFM output requires 1 channel");
            detail::write_pfm(tmp, img.plane(0));
        } else {
            throw io_error("unsupported image format: " + path);
        }
    });
}

/// Loads a float field from PFM, or from a grayscale PNG/PGM scaled to [0,1].
inline ScalarField load_field(const std::string& path) {
    const std::string ext = detail::lower_ext(path);
    if (ext == ".pfm") return detail::load_pfm(path);
    Image img = load_image(path);
    require(img.channels() == 1, "load_field: expected a single-channel image");
    return img.plane(0);
}

/// Saves a float field as PFM (exact) or quantized grayscale PNG/PGM. Atomic.
inline void save_field(const std::string& path, const ScalarField& field, int bits = 8) {
    const std::string ext = detail::lower_ext(path);
    if (ext == ".pfm") {
        detail::atomic_write(path, [&](const std::string& tmp) { detail::write_pfm(tmp, field); });
        return;
    }
    save_image(path, Image(field), bits);
}

}  // namespace ssfilt
