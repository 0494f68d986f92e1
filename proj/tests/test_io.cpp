#include <catch2/catch_amalgamated.hpp>
#include <filesystem>
#include <random>

#include "oracles.hpp"
#include "ssfilt/imageio.hpp"

using namespace ssfilt;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("ssfilt_io_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

Image quantized(const Image& img, unsigned maxval) {
    Image out = img;
    for (int c = 0; c < img.channels(); ++c)
        for (std::size_t i = 0; i < img.plane(c).size(); ++i)
            out.plane(c)[i] =
                std::floor(clamp01(img.plane(c)[i]) * maxval + 0.5) / static_cast<double>(maxval);
    return out;
}

}  // namespace

TEST_CASE("PNG round trips") {
    TempDir dir;
    std::mt19937 rng(3);
    for (int ch : {1, 3, 4}) {
        for (int bits : {8, 16}) {
            const Image img = oracle::random_image(13, 9, ch, rng);
            const std::string path = dir.file("t" + std::to_string(ch) + "_" +
                                              std::to_string(bits) + ".png");
            save_image(path, img, bits);
            const Image back = load_image(path);
            REQUIRE(back.channels() == ch);
            REQUIRE(back.width() == 13);
            REQUIRE(back.height() == 9);
            // quantization is the only loss, and re-encoding is exact
            CHECK(oracle::max_abs_diff(back, quantized(img, bits == 16 ? 65535 : 255)) < 1e-12);
        }
    }
}

TEST_CASE("PNM round trips") {
    TempDir dir;
    std::mt19937 rng(5);
    for (int ch : {1, 3}) {
        for (int bits : {8, 16}) {
            const Image img = oracle::random_image(7, 11, ch, rng);
            const std::string path =
                dir.file("t" + std::to_string(ch) + std::to_string(bits) + (ch == 1 ? ".pgm" : ".ppm"));
            save_image(path, img, bits);
            const Image back = load_image(path);
            REQUIRE(back.channels() == ch);
            CHECK(oracle::max_abs_diff(back, quantized(img, bits == 16 ? 65535 : 255)) < 1e-12);
        }
    }
}

TEST_CASE("ASCII PNM decodes") {
    TempDir dir;
    const std::string path = dir.file("a.pgm");
    {
        std::ofstream out(path);
        out << "P2\n# comment\n3 2\n255\n0 128 255\n64 32 16\n";
    }
    const Image img = load_image(path);
    REQUIRE(img.width() == 3);
    REQUIRE(img.height() == 2);
    CHECK(img.plane(0).at(0, 0) == 0.0);
    CHECK(img.plane(0).at(2, 0) == 1.0);
    CHECK(img.plane(0).at(1, 1) == Catch::Approx(32.0 / 255.0));
}

TEST_CASE("encode quantization rounds half up") {
    TempDir dir;
    Image img(4, 1, 1);
    img.plane(0).at(0, 0) = 0.5 / 255.0;         // exactly .5 -> 1
    img.plane(0).at(1, 0) = 0.49 / 255.0;        // -> 0
    img.plane(0).at(2, 0) = -0.2;                // clamps to 0
    img.plane(0).at(3, 0) = 1.7;                 // clamps to 255
    const std::string path = dir.file("q.pgm");
    save_image(path, img, 8);
    const Image back = load_image(path);
    CHECK(back.plane(0).at(0, 0) == Catch::Approx(1.0 / 255.0));
    CHECK(back.plane(0).at(1, 0) == 0.0);
    CHECK(back.plane(0).at(2, 0) == 0.0);
    CHECK(back.plane(0).at(3, 0) == 1.0);
}

TEST_CASE("PFM float fields") {
    TempDir dir;
    std::mt19937 rng(7);
    ScalarField f = oracle::random_field(9, 6, rng, -2.0, 5.0);  // PFM is not clamped
    const std::string path = dir.file("f.pfm");
    save_field(path, f);
    const ScalarField back = load_field(path);
    REQUIRE(back.width() == 9);
    REQUIRE(back.height() == 6);
    // float32 storage: relative error only
    for (std::size_t i = 0; i < f.size(); ++i)
        CHECK(back[i] == Catch::Approx(f[i]).epsilon(1e-6).margin(1e-6));

    SECTION("header is little-endian Pf") {
        std::ifstream in(path, std::ios::binary);
        std::string magic;
        int w, h;
        double scale;
        in >> magic >> w >> h >> scale;
        CHECK(magic == "Pf");
        CHECK(w == 9);
        CHECK(h == 6);
        CHECK(scale < 0.0);
    }
}

TEST_CASE("I/O failures raise io_error") {
    CHECK_THROWS_AS(load_image("/nonexistent/path.png"), io_error);
    CHECK_THROWS_AS(load_image("file.tiff"), io_error);
    TempDir dir;
    const std::string bad = dir.file("bad.png");
    {
        std::ofstream out(bad, std::ios::binary);
        out << "not a png";
    }
    CHECK_THROWS_AS(load_image(bad), io_error);
}

TEST_CASE("load_field rejects color images") {
    TempDir dir;
    std::mt19937 rng(11);
    const std::string path = dir.file("c.png");
    save_image(path, oracle::random_image(4, 4, 3, rng), 8);
    CHECK_THROWS_AS(load_field(path), std::invalid_argument);
}

TEST_CASE("failed saves leave no partial output") {
    TempDir dir;
    const std::string path = dir.file("sub/out.png");  // parent does not exist
    const Image img(4, 4, 1, 0.5);
    CHECK_THROWS_AS(save_image(path, img, 8), io_error);
    CHECK(!fs::exists(path));
    CHECK(!fs::exists(path + ".tmp"));
}
