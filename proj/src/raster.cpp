#include "grainsight/raster.hpp"

#include <cmath>

namespace grainsight {

GrayImage to_grayscale(const RgbImage& img) {
    GrayImage out(img.width(), img.height());
    kernels::active().rgb_to_gray(img.data().data(), out.data().data(), img.pixel_count());
    return out;
}

std::array<std::array<double, 5>, 5> gaussian_kernel_5x5(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw InvalidArgument("gaussian sigma must be positive");
    }
    std::array<std::array<double, 5>, 5> k{};
    double total = 0.0;
    for (int dy = -2; dy <= 2; ++dy) {
        for (int dx = -2; dx <= 2; ++dx) {
            const double g = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
            k[dy + 2][dx + 2] = g;
            total += g;
        }
    }
    for (auto& row : k) {
        for (auto& v : row) v /= total;
    }
    return k;
}

kernels::BlurWeights gaussian_weights_5x5(double sigma) {
    const auto k = gaussian_kernel_5x5(sigma);
    // (|dx|,|dy|) classes: (0,0) (0,1) (0,2) (1,1) (1,2) (2,2)
    return {k[2][2], k[2][3], k[2][4], k[3][3], k[3][4], k[4][4]};
}

GrayImage gaussian_blur_5x5(const GrayImage& img, double sigma) {
    const auto weights = gaussian_weights_5x5(sigma);
    const int w = img.width();
    const int h = img.height();
    GrayImage out(w, h);
    const auto& kt = kernels::active();
    for (int y = 0; y < h; ++y) {
        const std::uint8_t* rows[5];
        for (int dy = -2; dy <= 2; ++dy) {
            rows[dy + 2] = img.row(kernels::reflect101(y + dy, h)).data();
        }
        kt.blur5x5_row(rows, out.row(y).data(), w, weights);
    }
    return out;
}

}  // namespace grainsight
