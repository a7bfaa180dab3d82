#include <doctest.h>

#include "lepfusion/metrics.hpp"
#include "lepfusion/zoom.hpp"
#include "oracles.hpp"

using namespace lepfusion;

namespace {

Image affine(int h, int w, double p, double q, double c) {
    Image img(h, w, 1);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) img.at(y, x) = p * x + q * y + c;
    return img;
}

}  // namespace

TEST_CASE("bilinear_kernel") {
    CHECK(bilinear_kernel(0.0) == 1.0);
    CHECK(bilinear_kernel(0.25) == 0.75);
    CHECK(bilinear_kernel(-0.25) == 0.75);
    CHECK(bilinear_kernel(1.5) == 0.0);
    CHECK(bilinear_kernel(1.0) == 0.0);
    CHECK(bilinear_kernel(-1.0) == 0.0);
}

TEST_CASE("sample_bilinear") {
    SUBCASE("grid points reproduce the input") {
        const Image img = oracle::random_image(7, 9, 3, 3);
        for (int y = 0; y < 7; ++y)
            for (int x = 0; x < 9; ++x)
                for (int c = 0; c < 3; ++c) CHECK(sample_bilinear(img, x, y, c) == img.at(y, x, c));
    }
    SUBCASE("centre of a 2x2 checker") {
        const Image img(2, 2, 1, {0, 1, 1, 0});
        CHECK(sample_bilinear(img, 0.5, 0.5, 0) == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(sample_bilinear(img, 0.5, 0.5).size() == 1);
    }
    SUBCASE("tensor product agrees with two passes") {
        const Image img = oracle::random_image(8, 8, 1, 4);
        std::mt19937 rng(8);
        std::uniform_real_distribution<double> coord(0.0, 7.0);
        for (int i = 0; i < 100; ++i) {
            const double x = coord(rng), y = coord(rng);
            CHECK(std::abs(sample_bilinear(img, x, y, 0) - oracle::bilinear_two_pass(img, x, y)) < 1e-12);
        }
    }
    SUBCASE("out of domain") {
        const Image img(3, 3, 1);
        CHECK_THROWS_AS(sample_bilinear(img, -0.1, 0.0, 0), BoundsError);
        CHECK_THROWS_AS(sample_bilinear(img, 0.0, 2.01, 0), BoundsError);
        CHECK_NOTHROW(sample_bilinear(img, 2.0, 2.0, 0));
    }
}

TEST_CASE("bilinear properties") {
    std::mt19937 rng(12);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    SUBCASE("affine reproduction") {
        const Image img = affine(10, 12, 1.7, -0.6, 20.0);
        for (int i = 0; i < 500; ++i) {
            const double x = 11.0 * unit(rng), y = 9.0 * unit(rng);
            CHECK(std::abs(sample_bilinear(img, x, y, 0) - (1.7 * x - 0.6 * y + 20.0)) < 1e-10);
        }
    }
    SUBCASE("convexity") {
        const Image img = oracle::random_image(6, 6, 1, 13);
        for (int i = 0; i < 500; ++i) {
            const double x = 5.0 * unit(rng), y = 5.0 * unit(rng);
            const int x0 = static_cast<int>(x), y0 = static_cast<int>(y);
            const int x1 = std::min(x0 + 1, 5), y1 = std::min(y0 + 1, 5);
            const double v = sample_bilinear(img, x, y, 0);
            const double lo = std::min({img.at(y0, x0), img.at(y0, x1), img.at(y1, x0), img.at(y1, x1)});
            const double hi = std::max({img.at(y0, x0), img.at(y0, x1), img.at(y1, x0), img.at(y1, x1)});
            CHECK(v >= lo - 1e-12);
            CHECK(v <= hi + 1e-12);
        }
    }
}

TEST_CASE("resize_bilinear") {
    const Image img = oracle::random_image(5, 6, 3, 14);
    CHECK(oracle::max_abs_diff(resize_bilinear(img, 6, 5), img) < 1e-12);

    const Image up = resize_bilinear(Image(1, 2, 1, {0, 2}), 3, 1);
    CHECK(up == Image(1, 3, 1, {0, 1, 2}));

    const Image c = resize_bilinear(constant_image(3, 4, 1, 9.0), 11, 7);
    for (double v : c.samples()) CHECK(v == doctest::Approx(9.0).epsilon(1e-14));

    const Image big = resize_bilinear(img, 17, 13);
    for (int ch = 0; ch < 3; ++ch) {
        CHECK(big.at(0, 0, ch) == img.at(0, 0, ch));
        CHECK(big.at(0, 16, ch) == img.at(0, 5, ch));
        CHECK(big.at(12, 0, ch) == img.at(4, 0, ch));
        CHECK(big.at(12, 16, ch) == img.at(4, 5, ch));
    }
    CHECK(resize_bilinear(img, 1, 1).at(0, 0, 1) == img.at(0, 0, 1));
    CHECK_THROWS_AS(resize_bilinear(img, 0, 3), InvalidArgument);
}

TEST_CASE("zoom_region") {
    const Image img = oracle::random_image(10, 10, 1, 15);
    const Rect r{2, 3, 4, 5};
    CHECK(zoom_region(img, {r, 1.0}) == crop(img, r));

    const Image z = zoom_region(constant_image(6, 6, 1, 3.0), {{1, 1, 2, 2}, 2.0});
    CHECK(z.width() == 4);
    CHECK(z.height() == 4);
    for (double v : z.samples()) CHECK(v == doctest::Approx(3.0));

    const Image ramp = affine(12, 12, 2.0, 1.0, 5.0);
    const Image zr = zoom_region(ramp, {{2, 2, 6, 6}, 2.0});
    REQUIRE(zr.width() == 12);
    // Corner-aligned: output column j sits at crop x = j * 5 / 11.
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 12; ++j) {
            const double x = 2.0 + j * 5.0 / 11.0, y = 2.0 + i * 5.0 / 11.0;
            CHECK(std::abs(zr.at(i, j) - (2.0 * x + y + 5.0)) < 1e-10);
        }

    CHECK_THROWS_AS(zoom_region(img, {r, 0.0}), InvalidArgument);
    CHECK_THROWS_AS(zoom_region(img, {r, -1.0}), InvalidArgument);
    CHECK_THROWS_AS(zoom_region(img, {{8, 8, 4, 4}, 2.0}), BoundsError);
}

TEST_CASE("upscale then decimate keeps a smooth image") {
    Image smooth(64, 64, 1);
    for (int y = 0; y < 64; ++y)
        for (int x = 0; x < 64; ++x) smooth.at(y, x) = 128 + 60 * std::sin(x / 9.0) * std::cos(y / 13.0);
    const Rect r{8, 8, 32, 32};
    // 32 -> 63 samples puts every original pixel on an even output index.
    const Image up = resize_bilinear(crop(smooth, r), 63, 63);
    Image back(32, 32, 1);
    for (int y = 0; y < 32; ++y)
        for (int x = 0; x < 32; ++x) back.at(y, x) = up.at(2 * y, 2 * x);
    CHECK(psnr(back, crop(smooth, r), 255.0) >= 40.0);
}
