#include "grainsight/binarize.hpp"

#include <string>
#include <vector>

#include "grainsight/kernels.hpp"

namespace grainsight {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// x * y as (high, low) with value high * 2^64 + low.
struct Wide {
    u128 high;
    u64 low;
    friend bool operator>(const Wide& a, const Wide& b) {
        return a.high != b.high ? a.high > b.high : a.low > b.low;
    }
};

Wide mul_wide(u128 x, u64 y) {
    const u128 p_low = static_cast<u128>(static_cast<u64>(x)) * y;
    const u128 p_high = static_cast<u128>(static_cast<u64>(x >> 64)) * y;
    return {p_high + (p_low >> 64), static_cast<u64>(p_low)};
}

}  // namespace

Histogram256 histogram(const GrayImage& img) {
    Histogram256 h;
    for (auto v : img.data()) ++h.counts[v];
    h.total = img.pixel_count();
    return h;
}

std::uint8_t otsu_threshold(const Histogram256& hist) {
    // w0 w1 (mu0 - mu1)^2 = (s0 N - S n0)^2 / (N^2 n0 n1); N^2 is common to
    // every t, so candidates are compared as num/den with num = (s0 N - S n0)^2
    // and den = n0 n1, cross-multiplied into 192 bits.
    const u64 n = hist.total;
    if (n >= (u64{1} << 27)) throw InvalidArgument("image too large for exact Otsu");
    u64 sum_all = 0;
    for (int v = 0; v < 256; ++v) sum_all += hist.counts[v] * static_cast<u64>(v);

    u128 best_num = 0;
    u64 best_den = 1;
    int best_t = 0;
    u64 n0 = 0;
    u64 s0 = 0;
    for (int t = 0; t < 256; ++t) {
        n0 += hist.counts[t];
        s0 += hist.counts[t] * static_cast<u64>(t);
        const u64 n1 = n - n0;
        if (n0 == 0 || n1 == 0) continue;
        const __int128 diff = static_cast<__int128>(s0) * n - static_cast<__int128>(sum_all) * n0;
        const u128 mag = static_cast<u128>(diff < 0 ? -diff : diff);
        const u128 num = mag * mag;
        const u64 den = n0 * n1;
        if (mul_wide(num, best_den) > mul_wide(best_num, den)) {
            best_num = num;
            best_den = den;
            best_t = t;
        }
    }
    return static_cast<std::uint8_t>(best_t);
}

std::uint8_t otsu_threshold(const GrayImage& img) { return otsu_threshold(histogram(img)); }

BinaryImage apply_global_threshold(const GrayImage& img, std::uint8_t t) {
    BinaryImage out(img.width(), img.height());
    kernels::active().threshold_gt(img.data().data(), out.data().data(), img.pixel_count(), t);
    return out;
}

BinaryImage apply_global_threshold_dark(const GrayImage& img, std::uint8_t t) {
    BinaryImage out(img.width(), img.height());
    kernels::active().threshold_le(img.data().data(), out.data().data(), img.pixel_count(), t);
    return out;
}

void validate(const AdaptiveParams& params) {
    if (params.block_size < 3 || params.block_size % 2 == 0 ||
        params.block_size > kMaxAdaptiveBlock) {
        throw InvalidArgument("adaptive block size must be odd and in [3, " +
                              std::to_string(kMaxAdaptiveBlock) + "], got " +
                              std::to_string(params.block_size));
    }
}

BinaryImage adaptive_threshold(const GrayImage& img, const AdaptiveParams& params) {
    validate(params);
    const int w = img.width();
    const int h = img.height();
    const int b = params.block_size;
    const int r = b / 2;
    const int pw = w + b - 1;
    const int ph = h + b - 1;
    const std::size_t stride = static_cast<std::size_t>(pw) + 1;

    std::vector<int> col_map(pw);
    for (int px = 0; px < pw; ++px) col_map[px] = kernels::reflect101(px - r, w);

    // table[y][x] = sum of padded pixels in rows < y, cols < x
    std::vector<std::int64_t> table(stride * (ph + 1), 0);
    for (int py = 0; py < ph; ++py) {
        const auto src = img.row(kernels::reflect101(py - r, h));
        const std::int64_t* above = table.data() + stride * py;
        std::int64_t* cur = table.data() + stride * (py + 1);
        std::int64_t run = 0;
        for (int px = 0; px < pw; ++px) {
            run += src[col_map[px]];
            cur[px + 1] = above[px + 1] + run;
        }
    }

    BinaryImage out(w, h);
    const auto& kt = kernels::active();
    for (int y = 0; y < h; ++y) {
        kt.adaptive_row(img.row(y).data(), table.data() + stride * y,
                        table.data() + stride * (y + b), out.row(y).data(), w, b,
                        params.offset_c);
    }
    return out;
}

}  // namespace grainsight
