#pragma once

#include <cstddef>
#include <cstdint>

#include "grainsight/kernels.hpp"

namespace grainsight::kernels {

namespace scalar {
void rgb_to_gray(const std::uint8_t* rgb, std::uint8_t* gray, std::size_t n);
void blur5x5_row(const std::uint8_t* const rows[5], std::uint8_t* out, int width,
                 const BlurWeights& w);
void threshold_gt(const std::uint8_t* src, std::uint8_t* mask, std::size_t n, std::uint8_t t);
void threshold_le(const std::uint8_t* src, std::uint8_t* mask, std::size_t n, std::uint8_t t);
void adaptive_row(const std::uint8_t* src, const std::int64_t* top, const std::int64_t* bottom,
                  std::uint8_t* mask, int width, int block, std::int64_t offset);
}  // namespace scalar

#if defined(GRAINSIGHT_HAVE_AVX2)
namespace avx2 {
void rgb_to_gray(const std::uint8_t* rgb, std::uint8_t* gray, std::size_t n);
void blur5x5_row(const std::uint8_t* const rows[5], std::uint8_t* out, int width,
                 const BlurWeights& w);
void threshold_gt(const std::uint8_t* src, std::uint8_t* mask, std::size_t n, std::uint8_t t);
void threshold_le(const std::uint8_t* src, std::uint8_t* mask, std::size_t n, std::uint8_t t);
void adaptive_row(const std::uint8_t* src, const std::int64_t* top, const std::int64_t* bottom,
                  std::uint8_t* mask, int width, int block, std::int64_t offset);
}  // namespace avx2
#endif

}  // namespace grainsight::kernels
