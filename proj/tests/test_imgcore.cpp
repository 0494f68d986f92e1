#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "oracles.hpp"
#include "ssfilt/boxfilter.hpp"
#include "ssfilt/color.hpp"
#include "ssfilt/entropy.hpp"
#include "ssfilt/histogram.hpp"
#include "ssfilt/image.hpp"
#include "ssfilt/resample.hpp"

using namespace ssfilt;

TEST_CASE("pad_symmetric duplicates edge samples") {
    // 1-D row [a,b,c] with margin 2 -> [b,a,a,b,c,c,b]
    ScalarField row(3, 1);
    row[0] = 1.0;  // a
    row[1] = 2.0;  // b
    row[2] = 3.0;  // c
    const ScalarField p = pad_symmetric(row, 2);
    const double expected[7] = {2, 1, 1, 2, 3, 3, 2};
    REQUIRE(p.width() == 7);
    for (int x = 0; x < 7; ++x) CHECK(p.at(x, 2) == expected[x]);

    SECTION("margin 0 is the identity") {
        const ScalarField q = pad_symmetric(row, 0);
        for (int x = 0; x < 3; ++x) CHECK(q.at(x, 0) == row.at(x, 0));
    }
}

TEST_CASE("pad_symmetric matches enumerated reflection on a 3x3 field") {
    std::mt19937 rng(7);
    const ScalarField f = oracle::random_field(3, 3, rng);
    const ScalarField p = pad_symmetric(f, 1);
    REQUIRE(p.width() == 5);
    REQUIRE(p.height() == 5);
    // Index -1 mirrors to 0, index 3 mirrors to 2.
    const int map[5] = {0, 0, 1, 2, 2};
    for (int y = 0; y < 5; ++y)
        for (int x = 0; x < 5; ++x) CHECK(p.at(x, y) == f.at(map[x], map[y]));
}

TEST_CASE("pad_symmetric rejects oversized margins") {
    ScalarField f(3, 3, 0.0);
    CHECK_THROWS_AS(pad_symmetric(f, 3), std::invalid_argument);
    CHECK_THROWS_AS(box_filter(f, 3), std::invalid_argument);
}

TEST_CASE("box_filter on constants is exactly constant") {
    for (int r : {0, 1, 2, 5}) {
        const ScalarField f(16, 12, 0.7);
        const ScalarField b = box_filter(f, r);
        for (std::size_t i = 0; i < b.size(); ++i) {
            CHECK(b[i] == b[0]);  // pointwise constant
            CHECK(std::abs(b[i] - 0.7) < 1e-13);
        }
    }
}

TEST_CASE("box_filter with radius 0 is the identity") {
    std::mt19937 rng(11);
    const ScalarField f = oracle::random_field(9, 5, rng);
    const ScalarField b = box_filter(f, 0);
    CHECK(oracle::max_abs_diff(f, b) == 0.0);
}

TEST_CASE("box_filter matches the naive windowed mean") {
    std::mt19937 rng(23);
    SECTION("spec example: 16x16, r=3") {
        const ScalarField f = oracle::random_field(16, 16, rng);
        CHECK(oracle::max_abs_diff(box_filter(f, 3), oracle::naive_box(f, 3)) < 1e-12);
    }
    SECTION("radii 0..5 on assorted shapes") {
        for (int r = 0; r <= 5; ++r) {
            const ScalarField f = oracle::random_field(19 + r, 13 + 2 * r, rng);
            CHECK(oracle::max_abs_diff(box_filter(f, r), oracle::naive_box(f, r)) < 1e-10);
        }
    }
    SECTION("single-row and single-column fields") {
        const ScalarField row = oracle::random_field(24, 1, rng);
        const ScalarField col = oracle::random_field(1, 24, rng);
        CHECK(oracle::max_abs_diff(box_filter(row, 2), oracle::naive_box(row, 2)) < 1e-12);
        CHECK(oracle::max_abs_diff(box_filter(col, 2), oracle::naive_box(col, 2)) < 1e-12);
    }
}

TEST_CASE("box_filter is deterministic") {
    std::mt19937 rng(29);
    const ScalarField f = oracle::random_field(33, 21, rng);
    const ScalarField a = box_filter(f, 4);
    const ScalarField b = box_filter(f, 4);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("patch_stats on a constant pair is all zeros") {
    const ScalarField c1(10, 10, 0.3);
    const PatchStats st = patch_stats(c1, c1, 2);
    for (std::size_t i = 0; i < c1.size(); ++i) {
        CHECK(st.sigma2[i] == 0.0);
        CHECK(st.varsigma2[i] == 0.0);
        CHECK(st.phi[i] == 0.0);
    }
}

TEST_CASE("patch_stats: G = 1 - I gives perfect anti-correlation") {
    std::mt19937 rng(31);
    const ScalarField I = oracle::random_field(12, 12, rng);
    ScalarField G(12, 12);
    for (std::size_t i = 0; i < I.size(); ++i) G[i] = 1.0 - I[i];
    const PatchStats st = patch_stats(I, G, 2);
    for (std::size_t i = 0; i < I.size(); ++i) {
        CHECK(st.phi[i] == Catch::Approx(-st.sigma2[i]).margin(1e-12));
        if (st.sigma2[i] > 1e-9) {
            const double rho = st.phi[i] / std::sqrt(st.sigma2[i] * st.varsigma2[i]);
            CHECK(rho == Catch::Approx(-1.0).margin(1e-9));
        }
    }
}

TEST_CASE("patch_stats matches direct per-window moments") {
    std::mt19937 rng(37);
    const ScalarField I = oracle::random_field(12, 12, rng);
    const ScalarField G = oracle::random_field(12, 12, rng);
    const PatchStats st = patch_stats(I, G, 2);
    const oracle::NaiveMoments m = oracle::naive_moments(I, G, 2);
    CHECK(oracle::max_abs_diff(st.mu, m.mu) < 1e-10);
    CHECK(oracle::max_abs_diff(st.nu, m.nu) < 1e-10);
    CHECK(oracle::max_abs_diff(st.sigma2, m.sigma2) < 1e-10);
    CHECK(oracle::max_abs_diff(st.varsigma2, m.varsigma2) < 1e-10);
    CHECK(oracle::max_abs_diff(st.phi, m.phi) < 1e-10);
}

TEST_CASE("patch_stats invariants on random pairs") {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 5; ++trial) {
        const ScalarField I = oracle::random_field(20, 15, rng);
        const ScalarField G = oracle::random_field(20, 15, rng);
        const PatchStats st = patch_stats(I, G, 3);
        for (std::size_t i = 0; i < I.size(); ++i) {
            CHECK(st.sigma2[i] >= 0.0);
            CHECK(st.varsigma2[i] >= 0.0);
            // Cauchy-Schwarz with round-off headroom
            CHECK(st.phi[i] * st.phi[i] <= st.sigma2[i] * st.varsigma2[i] + 1e-9);
        }
    }

    SECTION("self stats coincide exactly") {
        const ScalarField I = oracle::random_field(14, 14, rng);
        const PatchStats st = patch_stats(I, I, 2);
        for (std::size_t i = 0; i < I.size(); ++i) {
            CHECK(st.mu[i] == st.nu[i]);
            CHECK(st.sigma2[i] == st.varsigma2[i]);
            CHECK(st.sigma2[i] == st.phi[i]);
        }
    }

    SECTION("dimension mismatch is rejected") {
        ScalarField a(4, 4, 0.0), b(5, 4, 0.0);
        CHECK_THROWS_AS(patch_stats(a, b, 1), std::invalid_argument);
    }
}

TEST_CASE("rgb/hsv conversion") {
    SECTION("pure red") {
        Image img(1, 1, 3);
        img.plane(0)[0] = 1.0;
        const Image hsv = rgb_to_hsv(img);
        CHECK(hsv.plane(0)[0] == 0.0);
        CHECK(hsv.plane(1)[0] == 1.0);
        CHECK(hsv.plane(2)[0] == 1.0);
    }
    SECTION("grayscale has zero saturation and V = g") {
        for (double g : {0.0, 0.25, 0.8}) {
            Image img(1, 1, 3);
            for (int c = 0; c < 3; ++c) img.plane(c)[0] = g;
            const Image hsv = rgb_to_hsv(img);
            CHECK(hsv.plane(1)[0] == 0.0);
            CHECK(hsv.plane(2)[0] == g);
        }
    }
    SECTION("round trip on random triples") {
        std::mt19937 rng(43);
        const Image img = oracle::random_image(10, 10, 3, rng);
        const Image back = hsv_to_rgb(rgb_to_hsv(img));
        CHECK(oracle::max_abs_diff(img, back) < 1e-6);
    }
    SECTION("wrong channel count is rejected") {
        Image gray(4, 4, 1);
        CHECK_THROWS_AS(rgb_to_hsv(gray), std::invalid_argument);
    }
}

TEST_CASE("upsample_nearest") {
    SECTION("1x1 source fills any size") {
        ScalarField f(1, 1, 0.42);
        const ScalarField up = upsample_nearest(f, 5, 3);
        for (std::size_t i = 0; i < up.size(); ++i) CHECK(up[i] == 0.42);
    }
    SECTION("integer scale copies blocks") {
        std::mt19937 rng(47);
        const ScalarField f = oracle::random_field(2, 2, rng);
        const ScalarField up = upsample_nearest(f, 4, 4);
        for (int y = 0; y < 4; ++y)
            for (int x = 0; x < 4; ++x) CHECK(up.at(x, y) == f.at(x / 2, y / 2));
    }
    SECTION("non-integer scale follows the floor mapping") {
        std::mt19937 rng(53);
        const ScalarField f = oracle::random_field(3, 5, rng);
        const ScalarField up = upsample_nearest(f, 7, 11);
        for (int y = 0; y < 11; ++y)
            for (int x = 0; x < 7; ++x)
                CHECK(up.at(x, y) == f.at(x * 3 / 7, y * 5 / 11));
    }
    SECTION("downscale is rejected") {
        ScalarField f(4, 4, 0.0);
        CHECK_THROWS_AS(upsample_nearest(f, 3, 4), std::invalid_argument);
    }
}

TEST_CASE("histogram_match") {
    std::mt19937 rng(59);
    SECTION("matching to itself stays within one bin") {
        const Image src = oracle::random_image(16, 16, 3, rng);
        const Image out = histogram_match(src, src);
        CHECK(oracle::max_abs_diff(out, src) <= 1.0 / 256.0);
    }
    SECTION("constant source maps to the reference constant's bin") {
        const Image src(8, 8, 1, 0.2);
        const Image ref(4, 4, 1, 0.9);
        const Image out = histogram_match(src, ref);
        for (std::size_t i = 0; i < out.plane(0).size(); ++i)
            CHECK(std::abs(out.plane(0)[i] - 0.9) <= 1.0 / 256.0);
    }
    SECTION("output CDF approximates the reference CDF") {
        const Image src = oracle::random_image(32, 32, 1, rng);
        const Image ref = oracle::random_image(32, 32, 1, rng);
        const Image out = histogram_match(src, ref);
        const auto hs = detail::normalized_histogram(src.plane(0));
        const auto ho = detail::normalized_histogram(out.plane(0));
        const auto hr = detail::normalized_histogram(ref.plane(0));
        double ks = 0.0, co = 0.0, cr = 0.0;
        double max_src = 0.0, max_ref = 0.0;
        for (int i = 0; i < 256; ++i) {
            co += ho[i];
            cr += hr[i];
            ks = std::max(ks, std::abs(co - cr));
            max_src = std::max(max_src, hs[i]);
            max_ref = std::max(max_ref, hr[i]);
        }
        // Pixels of one source bin move atomically, so the achievable KS gap
        // is bounded by the largest source bin plus reference granularity.
        CHECK(ks < max_src + max_ref);
        CHECK(oracle::max_abs_diff(out, out) == 0.0);
    }
    SECTION("channel mismatch is rejected") {
        Image a(4, 4, 3), b(4, 4, 1);
        CHECK_THROWS_AS(histogram_match(a, b), std::invalid_argument);
    }
}

TEST_CASE("local_entropy") {
    SECTION("constant image has zero entropy") {
        const ScalarField f(8, 8, 0.5);
        const ScalarField e = local_entropy(f, 3);
        for (std::size_t i = 0; i < e.size(); ++i) CHECK(e[i] <= 1e-9);
    }
    SECTION("N equally frequent values give log2(N)") {
        // 3-column periodic pattern; every 3x3 window sees each value 3 times.
        ScalarField f(9, 9);
        const double vals[3] = {0.0, 0.5, 1.0};
        for (int y = 0; y < 9; ++y)
            for (int x = 0; x < 9; ++x) f.at(x, y) = vals[x % 3];
        const ScalarField e = local_entropy(f, 3);
        CHECK(e.at(4, 4) == Catch::Approx(std::log2(3.0)).margin(1e-12));
    }
    SECTION("matches the direct histogram oracle") {
        std::mt19937 rng(61);
        const ScalarField f = oracle::random_field(20, 20, rng);
        const ScalarField e = local_entropy(f, 5);
        for (int y = 0; y < 20; y += 3)
            for (int x = 0; x < 20; x += 3)
                CHECK(std::abs(e.at(x, y) - oracle::naive_entropy_at(f, x, y, 5)) < 1e-9);
    }
    SECTION("even windows are rejected") {
        ScalarField f(8, 8, 0.0);
        CHECK_THROWS_AS(local_entropy(f, 4), std::invalid_argument);
    }
}
