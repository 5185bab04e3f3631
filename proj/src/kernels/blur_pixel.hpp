#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "grainsight/kernels.hpp"

namespace grainsight::kernels::detail {

// The six pixel groups that share a weight in a symmetric 5x5 kernel are
// summed as integers first. The result is therefore exactly invariant under
// horizontal/vertical flips and transposition, and the floating point part
// (six products, accumulated in a fixed order) is easy to reproduce lane-wise.
inline std::uint8_t blur_pixel(const std::uint8_t* const rows[5], int width, int x,
                               const BlurWeights& w) noexcept {
    const int l1 = reflect101(x - 1, width);
    const int r1 = reflect101(x + 1, width);
    const int l2 = reflect101(x - 2, width);
    const int r2 = reflect101(x + 2, width);
    const std::uint8_t* m2 = rows[0];
    const std::uint8_t* m1 = rows[1];
    const std::uint8_t* c0 = rows[2];
    const std::uint8_t* p1 = rows[3];
    const std::uint8_t* p2 = rows[4];

    const int s00 = c0[x];
    const int s01 = m1[x] + p1[x] + c0[l1] + c0[r1];
    const int s02 = m2[x] + p2[x] + c0[l2] + c0[r2];
    const int s11 = m1[l1] + m1[r1] + p1[l1] + p1[r1];
    const int s12 = m2[l1] + m2[r1] + p2[l1] + p2[r1] + m1[l2] + m1[r2] + p1[l2] + p1[r2];
    const int s22 = m2[l2] + m2[r2] + p2[l2] + p2[r2];

    double acc = w[0] * s00;
    acc = acc + w[1] * s01;
    acc = acc + w[2] * s02;
    acc = acc + w[3] * s11;
    acc = acc + w[4] * s12;
    acc = acc + w[5] * s22;
    const double r = std::floor(acc + 0.5);
    return static_cast<std::uint8_t>(std::clamp(r, 0.0, 255.0));
}

inline std::uint8_t luma(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept {
    // (a + 500) / 1000 is round-half-up, which equals half-away-from-zero
    // for non-negative values.
    return static_cast<std::uint8_t>((299 * r + 587 * g + 114 * b + 500) / 1000);
}

inline std::uint8_t adaptive_pixel(std::uint8_t v, const std::int64_t* top,
                                   const std::int64_t* bottom, int x, int block,
                                   std::int64_t offset) noexcept {
    const std::int64_t area = static_cast<std::int64_t>(block) * block;
    const std::int64_t sum = bottom[x + block] - top[x + block] - bottom[x] + top[x];
    return static_cast<std::int64_t>(v) * area > sum + offset * area ? 1 : 0;
}

}  // namespace grainsight::kernels::detail
