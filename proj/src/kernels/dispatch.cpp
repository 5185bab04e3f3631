#include <atomic>
#include <cstdlib>

#include "kernels_impl.hpp"

namespace grainsight::kernels {

namespace {

constexpr KernelTable kScalar{
    scalar::rgb_to_gray, scalar::blur5x5_row, scalar::threshold_gt,
    scalar::threshold_le, scalar::adaptive_row,
};

#if defined(GRAINSIGHT_HAVE_AVX2)
constexpr KernelTable kAvx2{
    avx2::rgb_to_gray, avx2::blur5x5_row, avx2::threshold_gt,
    avx2::threshold_le, avx2::adaptive_row,
};
#endif

std::atomic<Isa>& active_slot() {
    static std::atomic<Isa> slot{detected_isa()};
    return slot;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar:
            return "scalar";
        case Isa::avx2:
            return "avx2";
    }
    return "unknown";
}

std::optional<Isa> parse_isa(std::string_view name) noexcept {
    if (name == "scalar") return Isa::scalar;
    if (name == "avx2") return Isa::avx2;
    return std::nullopt;
}

const KernelTable& scalar_table() noexcept { return kScalar; }

bool isa_available(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar:
            return true;
        case Isa::avx2:
#if defined(GRAINSIGHT_HAVE_AVX2)
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
    }
    return false;
}

Isa detected_isa() noexcept {
    if (const char* env = std::getenv("GRAINSIGHT_ISA")) {
        if (auto forced = parse_isa(env); forced && isa_available(*forced)) return *forced;
    }
    return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

Isa active_isa() noexcept { return active_slot().load(std::memory_order_relaxed); }

bool set_active_isa(Isa isa) noexcept {
    if (!isa_available(isa)) return false;
    active_slot().store(isa, std::memory_order_relaxed);
    return true;
}

const KernelTable& table(Isa isa) noexcept {
#if defined(GRAINSIGHT_HAVE_AVX2)
    if (isa == Isa::avx2 && isa_available(Isa::avx2)) return kAvx2;
#else
    (void)isa;
#endif
    return kScalar;
}

}  // namespace grainsight::kernels
