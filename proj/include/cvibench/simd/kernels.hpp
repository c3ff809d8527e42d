#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Data-parallel inner loops shared by the distance and index code.
//
// Every kernel has a scalar reference implementation and (on x86-64) an AVX2
// implementation. The variant is chosen once at runtime from CPUID; setting
// CVIBENCH_ISA=scalar in the environment, or calling set_isa(), forces the
// reference path. Variants agree to within floating-point reassociation
// error; tests/test_kernels.cpp pins the tolerance.

namespace cvibench::simd {

enum class Isa { scalar, avx2 };

/// Sums used to form a Pearson correlation in one pass.
struct PairMoments {
    double sum_x = 0.0;
    double sum_y = 0.0;
    double sum_xx = 0.0;
    double sum_yy = 0.0;
    double sum_xy = 0.0;
};

/// Function table for one instruction set.
struct KernelTable {
    double (*squared_distance)(const double* a, const double* b, std::size_t len);
    double (*sum)(const double* x, std::size_t len);
    PairMoments (*pair_moments)(const double* x, const double* y, std::size_t len);
};

namespace scalar {
double squared_distance(const double* a, const double* b, std::size_t len);
double sum(const double* x, std::size_t len);
PairMoments pair_moments(const double* x, const double* y, std::size_t len);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define CVIBENCH_HAVE_AVX2_KERNELS 1
namespace avx2 {
double squared_distance(const double* a, const double* b, std::size_t len);
double sum(const double* x, std::size_t len);
PairMoments pair_moments(const double* x, const double* y, std::size_t len);
}  // namespace avx2
#endif

/// True if the CPU can run the given variant.
bool isa_supported(Isa isa) noexcept;

/// Variant currently used by the dispatching wrappers below.
Isa active_isa() noexcept;

/// Force a variant. Returns false (and changes nothing) if unsupported.
bool set_isa(Isa isa) noexcept;

std::string_view isa_name(Isa isa) noexcept;

const KernelTable& table(Isa isa) noexcept;

// Dispatching wrappers.

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
    return table(active_isa()).squared_distance(a.data(), b.data(), a.size());
}

inline double sum(std::span<const double> x) {
    return table(active_isa()).sum(x.data(), x.size());
}

inline PairMoments pair_moments(std::span<const double> x, std::span<const double> y) {
    return table(active_isa()).pair_moments(x.data(), y.data(), x.size());
}

}  // namespace cvibench::simd
