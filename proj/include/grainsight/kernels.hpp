#pragma once

// Data-parallel inner loops of the pipeline. Each kernel has a scalar
// reference implementation and, on x86-64, an AVX2 variant compiled in a
// separate translation unit. The active variant is chosen at startup from
// the CPU's capabilities and can be overridden with GRAINSIGHT_ISA=scalar
// or set_active_isa(). Every variant must produce bit-identical output to
// the scalar reference.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace grainsight::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa) noexcept;
std::optional<Isa> parse_isa(std::string_view name) noexcept;

/// Distinct weights of a normalized, symmetric 5x5 kernel, indexed by
/// (|dx|,|dy|) class: (0,0) (0,1) (0,2) (1,1) (1,2) (2,2).
using BlurWeights = std::array<double, 6>;

struct KernelTable {
    /// Interleaved RGB to BT.601 luma, rounded half away from zero.
    void (*rgb_to_gray)(const std::uint8_t* rgb, std::uint8_t* gray, std::size_t n);

    /// One output row of the 5x5 blur. rows[0..4] are the source rows for
    /// dy = -2..2 (already reflected); columns reflect inside the kernel.
    void (*blur5x5_row)(const std::uint8_t* const rows[5], std::uint8_t* out, int width,
                        const BlurWeights& w);

    /// mask[i] = src[i] > t
    void (*threshold_gt)(const std::uint8_t* src, std::uint8_t* mask, std::size_t n,
                         std::uint8_t t);
    /// mask[i] = src[i] <= t
    void (*threshold_le)(const std::uint8_t* src, std::uint8_t* mask, std::size_t n,
                         std::uint8_t t);

    /// One row of the mean-window comparison. top/bottom are summed-area rows
    /// y and y+block of the reflected, padded image. mask[x] is set iff
    /// src[x]*area > window_sum(x) + offset*area.
    void (*adaptive_row)(const std::uint8_t* src, const std::int64_t* top,
                         const std::int64_t* bottom, std::uint8_t* mask, int width, int block,
                         std::int64_t offset);
};

const KernelTable& scalar_table() noexcept;

/// Whether the variant was compiled in and the CPU supports it.
bool isa_available(Isa isa) noexcept;

/// Best variant for this CPU, honoring GRAINSIGHT_ISA.
Isa detected_isa() noexcept;

Isa active_isa() noexcept;
/// Returns false (and leaves the selection unchanged) if unavailable.
bool set_active_isa(Isa isa) noexcept;

const KernelTable& table(Isa isa) noexcept;
inline const KernelTable& active() noexcept { return table(active_isa()); }

/// Index into [0, n) with reflect-101 border handling (dcb|abcd|cba),
/// repeated for offsets larger than the extent.
inline int reflect101(int i, int n) noexcept {
    if (n == 1) return 0;
    const int period = 2 * n - 2;
    i %= period;
    if (i < 0) i += period;
    return i < n ? i : period - i;
}

}  // namespace grainsight::kernels
