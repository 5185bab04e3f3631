#include <cmath>

#include "doctest.h"
#include "grainsight/errors.hpp"
#include "grainsight/raster.hpp"
#include "support/oracles.hpp"

using namespace grainsight;

namespace {

GrayImage transpose(const GrayImage& img) {
    GrayImage out(img.height(), img.width());
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) out.at(y, x) = img.at(x, y);
    }
    return out;
}

// Direct 5x5 convolution with the full kernel matrix, summed in the same
// class order the library documents.
GrayImage blur_reference(const GrayImage& img, double sigma) {
    const auto kern = gaussian_kernel_5x5(sigma);
    GrayImage out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            long long group[6] = {};
            for (int dy = -2; dy <= 2; ++dy) {
                for (int dx = -2; dx <= 2; ++dx) {
                    const int a = std::min(std::abs(dx), std::abs(dy));
                    const int b = std::max(std::abs(dx), std::abs(dy));
                    const int cls = a == 0 ? b : (a == 1 ? 2 + b : 5);
                    group[cls] += img.at(kernels::reflect101(x + dx, img.width()),
                                         kernels::reflect101(y + dy, img.height()));
                }
            }
            const double w[6] = {kern[2][2], kern[2][3], kern[2][4],
                                 kern[3][3], kern[3][4], kern[4][4]};
            double acc = 0.0;
            for (int c = 0; c < 6; ++c) acc += w[c] * static_cast<double>(group[c]);
            out.at(x, y) = static_cast<std::uint8_t>(std::clamp(std::floor(acc + 0.5), 0.0, 255.0));
        }
    }
    return out;
}

}  // namespace

TEST_CASE("raster construction validates dimensions") {
    CHECK_THROWS_AS(GrayImage(0, 4), InvalidArgument);
    CHECK_THROWS_AS(GrayImage(4, -1), InvalidArgument);
    CHECK_THROWS_AS(RgbImage(2, 2, std::vector<std::uint8_t>(11)), InvalidArgument);
    const RgbImage ok(2, 2, std::vector<std::uint8_t>(12, 9));
    CHECK(ok.at(1, 1, 2) == 9);
    CHECK(GrayImage().empty());
}

TEST_CASE("binary images store 0/1 only") {
    const BinaryImage m(3, 1, std::vector<std::uint8_t>{0, 7, 255});
    CHECK(m.at(1, 0) == 1);
    CHECK(m.at(2, 0) == 1);
    CHECK(m.count() == 2);
}

TEST_CASE("crop and flips") {
    GrayImage g(4, 3);
    for (int y = 0; y < 3; ++y) {
        for (int x = 0; x < 4; ++x) g.at(x, y) = static_cast<std::uint8_t>(10 * y + x);
    }
    const GrayImage c = crop(g, {1, 1, 2, 2});
    CHECK(c.width() == 2);
    CHECK(c.at(0, 0) == 11);
    CHECK(c.at(1, 1) == 22);
    CHECK_THROWS_AS(crop(g, {3, 0, 2, 1}), InvalidArgument);
    CHECK(flip_horizontal(g).at(0, 0) == 3);
    CHECK(flip_vertical(g).at(0, 0) == 20);
    CHECK(flip_horizontal(flip_horizontal(g)) == g);
}

TEST_CASE("grayscale uses BT.601 weights") {
    const RgbImage img(4, 1, std::vector<std::uint8_t>{255, 0, 0, 0, 255, 0, 0, 0, 255, 10, 20, 30});
    const GrayImage g = to_grayscale(img);
    CHECK(g.at(0, 0) == 76);   // 76.245
    CHECK(g.at(1, 0) == 150);  // 149.685
    CHECK(g.at(2, 0) == 29);   // 29.07
    CHECK(g.at(3, 0) == 18);   // 18.15
}

TEST_CASE("gaussian kernel is normalized and symmetric") {
    for (double sigma : {0.5, 1.0, 2.0}) {
        const auto k = gaussian_kernel_5x5(sigma);
        double sum = 0.0;
        for (int i = 0; i < 5; ++i) {
            for (int j = 0; j < 5; ++j) {
                sum += k[i][j];
                CHECK(k[i][j] == k[j][i]);
                CHECK(k[i][j] == k[4 - i][j]);
            }
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(k[2][2] > k[2][3]);
        CHECK(k[2][3] > k[3][3]);
    }
    CHECK_THROWS_AS(gaussian_kernel_5x5(0.0), InvalidArgument);
    CHECK_THROWS_AS(gaussian_blur_5x5(GrayImage(3, 3), -1.0), InvalidArgument);
    CHECK_THROWS_AS(gaussian_blur_5x5(GrayImage(3, 3), std::nan("")), InvalidArgument);
}

TEST_CASE("blur matches a direct convolution") {
    SplitMix64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        const int w = 1 + static_cast<int>(rng.next() % 40);
        const int h = 1 + static_cast<int>(rng.next() % 40);
        const GrayImage g = oracle::random_gray(rng, w, h);
        const double sigma = 0.5 + (rng.next() % 100) / 40.0;
        REQUIRE(gaussian_blur_5x5(g, sigma) == blur_reference(g, sigma));
    }
}

TEST_CASE("blur preserves constant images") {
    for (int v : {0, 1, 128, 254, 255}) {
        const GrayImage g(13, 7, static_cast<std::uint8_t>(v));
        CHECK(gaussian_blur_5x5(g) == g);
    }
}

TEST_CASE("blur commutes with flips and transposition") {
    SplitMix64 rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        const int w = 1 + static_cast<int>(rng.next() % 50);
        const int h = 1 + static_cast<int>(rng.next() % 50);
        const GrayImage g = oracle::random_gray(rng, w, h);
        const GrayImage b = gaussian_blur_5x5(g);
        CHECK(gaussian_blur_5x5(flip_horizontal(g)) == flip_horizontal(b));
        CHECK(gaussian_blur_5x5(flip_vertical(g)) == flip_vertical(b));
        CHECK(gaussian_blur_5x5(transpose(g)) == transpose(b));
    }
}
