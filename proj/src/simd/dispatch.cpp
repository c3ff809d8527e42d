#include "cvibench/simd/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string_view>

namespace cvibench::simd {

namespace {

constexpr KernelTable kScalarTable{&scalar::squared_distance, &scalar::sum, &scalar::pair_moments};

#ifdef CVIBENCH_HAVE_AVX2_KERNELS
constexpr KernelTable kAvx2Table{&avx2::squared_distance, &avx2::sum, &avx2::pair_moments};
#endif

Isa detect() noexcept {
    if (const char* forced = std::getenv("CVIBENCH_ISA")) {
        if (std::string_view(forced) == "scalar") return Isa::scalar;
    }
    return isa_supported(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() noexcept {
    static std::atomic<Isa> isa{detect()};
    return isa;
}

}  // namespace

bool isa_supported(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar:
            return true;
        case Isa::avx2:
#if defined(CVIBENCH_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
    }
    return false;
}

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

bool set_isa(Isa isa) noexcept {
    if (!isa_supported(isa)) return false;
    current().store(isa, std::memory_order_relaxed);
    return true;
}

std::string_view isa_name(Isa isa) noexcept {
    return isa == Isa::avx2 ? "avx2" : "scalar";
}

const KernelTable& table(Isa isa) noexcept {
#ifdef CVIBENCH_HAVE_AVX2_KERNELS
    if (isa == Isa::avx2) return kAvx2Table;
#endif
    (void)isa;
    return kScalarTable;
}

}  // namespace cvibench::simd
