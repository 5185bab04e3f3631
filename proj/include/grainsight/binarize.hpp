#pragma once

#include <array>
#include <cstdint>

#include "grainsight/image.hpp"

namespace grainsight {

struct Histogram256 {
    std::array<std::uint64_t, 256> counts{};
    std::uint64_t total = 0;
};

Histogram256 histogram(const GrayImage& img);

/// Otsu's threshold: the t maximizing w0*w1*(mu0 - mu1)^2 with class 0 = {v <= t}.
/// Comparisons are exact integer arithmetic; ties go to the smallest t, so a
/// constant image yields 0.
std::uint8_t otsu_threshold(const Histogram256& hist);
std::uint8_t otsu_threshold(const GrayImage& img);

/// Foreground iff intensity > t.
BinaryImage apply_global_threshold(const GrayImage& img, std::uint8_t t);
/// Foreground iff intensity <= t (dark objects on a light surround).
BinaryImage apply_global_threshold_dark(const GrayImage& img, std::uint8_t t);

struct AdaptiveParams {
    int block_size = 51;  ///< odd, >= 3
    int offset_c = 40;    ///< intensity delta added to the local mean
};

inline constexpr int kMaxAdaptiveBlock = 4095;

void validate(const AdaptiveParams& params);

/// Foreground iff intensity > local mean + offset_c, where the mean runs over
/// a block_size x block_size window (reflect-101 borders). Window sums come
/// from a summed-area table and the comparison is done in integers:
/// v * b^2 > sum + c * b^2.
BinaryImage adaptive_threshold(const GrayImage& img, const AdaptiveParams& params = {});

}  // namespace grainsight
