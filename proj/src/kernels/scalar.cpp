#include "blur_pixel.hpp"
#include "kernels_impl.hpp"

namespace grainsight::kernels::scalar {

void rgb_to_gray(const std::uint8_t* rgb, std::uint8_t* gray, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        gray[i] = detail::luma(rgb[3 * i], rgb[3 * i + 1], rgb[3 * i + 2]);
    }
}

void blur5x5_row(const std::uint8_t* const rows[5], std::uint8_t* out, int width,
                 const BlurWeights& w) {
    for (int x = 0; x < width; ++x) out[x] = detail::blur_pixel(rows, width, x, w);
}

void threshold_gt(const std::uint8_t* src, std::uint8_t* mask, std::size_t n, std::uint8_t t) {
    for (std::size_t i = 0; i < n; ++i) mask[i] = src[i] > t ? 1 : 0;
}

void threshold_le(const std::uint8_t* src, std::uint8_t* mask, std::size_t n, std::uint8_t t) {
    for (std::size_t i = 0; i < n; ++i) mask[i] = src[i] <= t ? 1 : 0;
}

void adaptive_row(const std::uint8_t* src, const std::int64_t* top, const std::int64_t* bottom,
                  std::uint8_t* mask, int width, int block, std::int64_t offset) {
    for (int x = 0; x < width; ++x) {
        mask[x] = detail::adaptive_pixel(src[x], top, bottom, x, block, offset);
    }
}

}  // namespace grainsight::kernels::scalar
