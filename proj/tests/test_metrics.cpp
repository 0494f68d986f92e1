#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "oracles.hpp"
#include "ssfilt/metrics.hpp"

using namespace ssfilt;

TEST_CASE("total_variation") {
    SECTION("constant image has zero TV") {
        const Image img(12, 9, 3, 0.4);
        CHECK(total_variation(img).value == 0.0);
    }
    SECTION("single white pixel on black gives TV = 4") {
        Image img(9, 9, 1, 0.0);
        img.plane(0).at(4, 4) = 1.0;
        CHECK(total_variation(img).value == 4.0);
    }
    SECTION("invariant under global offset") {
        std::mt19937 rng(3);
        Image img = oracle::random_image(16, 16, 1, rng);
        const double tv0 = total_variation(img).value;
        for (std::size_t i = 0; i < img.plane(0).size(); ++i) img.plane(0)[i] += 0.3;
        CHECK(total_variation(img).value == Catch::Approx(tv0).margin(1e-9));
    }
    SECTION("positive homogeneity") {
        std::mt19937 rng(5);
        Image img = oracle::random_image(16, 16, 1, rng);
        const double tv0 = total_variation(img).value;
        for (std::size_t i = 0; i < img.plane(0).size(); ++i) img.plane(0)[i] *= 2.5;
        CHECK(total_variation(img).value == Catch::Approx(2.5 * tv0).epsilon(1e-12));
    }
    SECTION("mask restricts the anchor pixels") {
        Image img(4, 1, 1, 0.0);
        img.plane(0).at(1, 0) = 1.0;  // diffs: |1-0| at x=0, |0-1| at x=1
        ScalarField mask(4, 1, 0.0);
        mask.at(0, 0) = 1.0;
        CHECK(total_variation(img, &mask).value == 1.0);
        mask.at(1, 0) = 1.0;
        CHECK(total_variation(img, &mask).value == 2.0);
    }
    SECTION("non-binary masks are rejected") {
        const Image img(4, 4, 1, 0.0);
        ScalarField mask(4, 4, 0.5);
        CHECK_THROWS_AS(total_variation(img, &mask), std::invalid_argument);
    }
}

TEST_CASE("ergas") {
    std::mt19937 rng(7);
    SECTION("zero iff identical") {
        const Image ref = oracle::random_image(16, 16, 3, rng);
        CHECK(ergas(ref, ref, 4.0).value == 0.0);
    }
    SECTION("closed form for a constant offset on one band") {
        Image ref(10, 10, 3, 0.5);
        Image fused = ref;
        for (std::size_t i = 0; i < fused.plane(1).size(); ++i) fused.plane(1)[i] += 0.1;
        const double expected = 100.0 * 4.0 * std::sqrt((0.1 / 0.5) * (0.1 / 0.5) / 3.0);
        CHECK(ergas(fused, ref, 4.0).value == Catch::Approx(expected).epsilon(1e-12));
    }
    SECTION("strictly increasing with noise amplitude") {
        const Image ref = oracle::random_image(24, 24, 3, rng);
        std::normal_distribution<double> g(0.0, 1.0);
        double prev = 0.0;
        for (double amp : {0.01, 0.05, 0.15}) {
            Image noisy = ref;
            std::mt19937 nrng(99);  // same noise shape, scaled
            for (int c = 0; c < 3; ++c)
                for (std::size_t i = 0; i < noisy.plane(c).size(); ++i)
                    noisy.plane(c)[i] += amp * g(nrng);
            const double e = ergas(noisy, ref, 4.0).value;
            CHECK(e > prev);
            prev = e;
        }
    }
    SECTION("zero-mean reference band is rejected") {
        const Image ref(8, 8, 1, 0.0);
        const Image fused(8, 8, 1, 0.1);
        CHECK_THROWS_AS(ergas(fused, ref, 4.0), std::invalid_argument);
    }
}

TEST_CASE("region_stats") {
    std::mt19937 rng(11);
    const Image img = oracle::random_image(16, 16, 1, rng);

    SECTION("full mask equals whole-image stats") {
        const ScalarField mask(16, 16, 1.0);
        const RegionStats rs = region_stats(img, mask);
        CHECK(rs.mean.value == Catch::Approx(mean(img.plane(0))).margin(1e-12));
        CHECK(rs.tv.value == Catch::Approx(total_variation(img).value).margin(1e-12));
    }
    SECTION("constant region has zero variance") {
        Image im2 = img;
        ScalarField mask(16, 16, 0.0);
        for (int y = 2; y < 6; ++y)
            for (int x = 3; x < 9; ++x) {
                im2.plane(0).at(x, y) = 0.77;
                mask.at(x, y) = 1.0;
            }
        const RegionStats rs = region_stats(im2, mask);
        CHECK(rs.variance.value == 0.0);
        CHECK(rs.mean.value == Catch::Approx(0.77).margin(1e-12));
    }
    SECTION("matches a direct masked computation") {
        std::mt19937 mrng(13);
        ScalarField mask(16, 16, 0.0);
        for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = (mrng() & 1) ? 1.0 : 0.0;
        const RegionStats rs = region_stats(img, mask);
        double s = 0.0, s2 = 0.0;
        std::size_t n = 0;
        for (std::size_t i = 0; i < mask.size(); ++i) {
            if (mask[i] != 1.0) continue;
            s += img.plane(0)[i];
            s2 += img.plane(0)[i] * img.plane(0)[i];
            ++n;
        }
        CHECK(rs.mean.value == Catch::Approx(s / n).margin(1e-12));
        CHECK(rs.variance.value == Catch::Approx(s2 / n - (s / n) * (s / n)).margin(1e-12));
    }
    SECTION("empty region is rejected") {
        const ScalarField mask(16, 16, 0.0);
        CHECK_THROWS_AS(region_stats(img, mask), std::invalid_argument);
    }
}
