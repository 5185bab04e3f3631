// Compiled with -mavx2 (no -mfma). Only reached after a runtime CPU check.

#include <immintrin.h>

#include <cstring>

#include "blur_pixel.hpp"
#include "kernels_impl.hpp"

namespace grainsight::kernels::avx2 {

namespace {

inline __m256i load8_u8_to_i32(const std::uint8_t* p) {
    return _mm256_cvtepu8_epi32(_mm_loadl_epi64(reinterpret_cast<const __m128i*>(p)));
}

inline __m256i add4(__m256i a, __m256i b, __m256i c, __m256i d) {
    return _mm256_add_epi32(_mm256_add_epi32(a, b), _mm256_add_epi32(c, d));
}

// Same six products, same accumulation order as detail::blur_pixel.
inline __m128i weigh4(const __m128i s[6], const BlurWeights& w) {
    __m256d acc = _mm256_mul_pd(_mm256_set1_pd(w[0]), _mm256_cvtepi32_pd(s[0]));
    for (int k = 1; k < 6; ++k) {
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(w[k]), _mm256_cvtepi32_pd(s[k])));
    }
    acc = _mm256_floor_pd(_mm256_add_pd(acc, _mm256_set1_pd(0.5)));
    acc = _mm256_min_pd(_mm256_max_pd(acc, _mm256_setzero_pd()), _mm256_set1_pd(255.0));
    return _mm256_cvttpd_epi32(acc);
}

}  // namespace

void rgb_to_gray(const std::uint8_t* rgb, std::uint8_t* gray, std::size_t n) {
    const __m256i idx = _mm256_setr_epi32(0, 3, 6, 9, 12, 15, 18, 21);
    const __m256i byte = _mm256_set1_epi32(0xFF);
    const __m256i wr = _mm256_set1_epi32(299);
    const __m256i wg = _mm256_set1_epi32(587);
    const __m256i wb = _mm256_set1_epi32(114);
    const __m256i half = _mm256_set1_epi32(500);
    const __m256d thousand = _mm256_set1_pd(1000.0);

    std::size_t i = 0;
    // Each gather lane reads 4 bytes, one past the pixel; keep a pixel in reserve.
    for (; i + 8 < n; i += 8) {
        const __m256i v =
            _mm256_i32gather_epi32(reinterpret_cast<const int*>(rgb + 3 * i), idx, 1);
        const __m256i r = _mm256_and_si256(v, byte);
        const __m256i g = _mm256_and_si256(_mm256_srli_epi32(v, 8), byte);
        const __m256i b = _mm256_and_si256(_mm256_srli_epi32(v, 16), byte);
        __m256i y = _mm256_add_epi32(_mm256_mullo_epi32(r, wr), _mm256_mullo_epi32(g, wg));
        y = _mm256_add_epi32(_mm256_add_epi32(y, _mm256_mullo_epi32(b, wb)), half);

        // Exact floor division: y < 2^18, so y/1000 in double never rounds across an integer.
        const __m256d lo = _mm256_floor_pd(
            _mm256_div_pd(_mm256_cvtepi32_pd(_mm256_castsi256_si128(y)), thousand));
        const __m256d hi = _mm256_floor_pd(
            _mm256_div_pd(_mm256_cvtepi32_pd(_mm256_extracti128_si256(y, 1)), thousand));
        const __m128i q16 = _mm_packs_epi32(_mm256_cvttpd_epi32(lo), _mm256_cvttpd_epi32(hi));
        const __m128i q8 = _mm_packus_epi16(q16, q16);
        _mm_storel_epi64(reinterpret_cast<__m128i*>(gray + i), q8);
    }
    for (; i < n; ++i) gray[i] = detail::luma(rgb[3 * i], rgb[3 * i + 1], rgb[3 * i + 2]);
}

void blur5x5_row(const std::uint8_t* const rows[5], std::uint8_t* out, int width,
                 const BlurWeights& w) {
    const std::uint8_t* m2 = rows[0];
    const std::uint8_t* m1 = rows[1];
    const std::uint8_t* c0 = rows[2];
    const std::uint8_t* p1 = rows[3];
    const std::uint8_t* p2 = rows[4];

    int x = 0;
    for (; x < width && x < 2; ++x) out[x] = detail::blur_pixel(rows, width, x, w);

    // Vector body covers x..x+7 and reads columns x-2..x+9.
    for (; x + 10 <= width; x += 8) {
        auto at = [x](const std::uint8_t* row, int dx) { return load8_u8_to_i32(row + x + dx); };
        __m256i s[6];
        s[0] = at(c0, 0);
        s[1] = add4(at(m1, 0), at(p1, 0), at(c0, -1), at(c0, 1));
        s[2] = add4(at(m2, 0), at(p2, 0), at(c0, -2), at(c0, 2));
        s[3] = add4(at(m1, -1), at(m1, 1), at(p1, -1), at(p1, 1));
        s[4] = _mm256_add_epi32(add4(at(m2, -1), at(m2, 1), at(p2, -1), at(p2, 1)),
                                add4(at(m1, -2), at(m1, 2), at(p1, -2), at(p1, 2)));
        s[5] = add4(at(m2, -2), at(m2, 2), at(p2, -2), at(p2, 2));

        __m128i lo[6];
        __m128i hi[6];
        for (int k = 0; k < 6; ++k) {
            lo[k] = _mm256_castsi256_si128(s[k]);
            hi[k] = _mm256_extracti128_si256(s[k], 1);
        }
        const __m128i q16 = _mm_packs_epi32(weigh4(lo, w), weigh4(hi, w));
        _mm_storel_epi64(reinterpret_cast<__m128i*>(out + x), _mm_packus_epi16(q16, q16));
    }
    for (; x < width; ++x) out[x] = detail::blur_pixel(rows, width, x, w);
}

void threshold_gt(const std::uint8_t* src, std::uint8_t* mask, std::size_t n, std::uint8_t t) {
    if (t == 255) {
        std::memset(mask, 0, n);
        return;
    }
    const __m256i lim = _mm256_set1_epi8(static_cast<char>(t + 1));
    const __m256i one = _mm256_set1_epi8(1);
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        const __m256i ge = _mm256_cmpeq_epi8(_mm256_max_epu8(v, lim), v);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(mask + i), _mm256_and_si256(ge, one));
    }
    for (; i < n; ++i) mask[i] = src[i] > t ? 1 : 0;
}

void threshold_le(const std::uint8_t* src, std::uint8_t* mask, std::size_t n, std::uint8_t t) {
    const __m256i lim = _mm256_set1_epi8(static_cast<char>(t));
    const __m256i one = _mm256_set1_epi8(1);
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        const __m256i le = _mm256_cmpeq_epi8(_mm256_min_epu8(v, lim), v);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(mask + i), _mm256_and_si256(le, one));
    }
    for (; i < n; ++i) mask[i] = src[i] <= t ? 1 : 0;
}

void adaptive_row(const std::uint8_t* src, const std::int64_t* top, const std::int64_t* bottom,
                  std::uint8_t* mask, int width, int block, std::int64_t offset) {
    const std::int64_t area = static_cast<std::int64_t>(block) * block;
    const __m256i varea = _mm256_set1_epi64x(area);
    const __m256i vbias = _mm256_set1_epi64x(offset * area);
    int x = 0;
    for (; x + 4 <= width; x += 4) {
        auto ld = [](const std::int64_t* p) {
            return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
        };
        const __m256i sum = _mm256_add_epi64(
            _mm256_sub_epi64(_mm256_sub_epi64(ld(bottom + x + block), ld(top + x + block)),
                             ld(bottom + x)),
            ld(top + x));
        std::int32_t four;
        std::memcpy(&four, src + x, 4);
        const __m256i v = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(four));
        const __m256i lhs = _mm256_mul_epu32(v, varea);
        const __m256i gt = _mm256_cmpgt_epi64(lhs, _mm256_add_epi64(sum, vbias));
        const int bits = _mm256_movemask_pd(_mm256_castsi256_pd(gt));
        mask[x] = bits & 1;
        mask[x + 1] = (bits >> 1) & 1;
        mask[x + 2] = (bits >> 2) & 1;
        mask[x + 3] = (bits >> 3) & 1;
    }
    for (; x < width; ++x) mask[x] = detail::adaptive_pixel(src[x], top, bottom, x, block, offset);
}

}  // namespace grainsight::kernels::avx2
