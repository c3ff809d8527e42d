// Compiled with -mavx2 -mfma; only reached after a CPUID check.
#include "cvibench/simd/kernels.hpp"

#include <immintrin.h>

namespace cvibench::simd::avx2 {

namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d pair = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

}  // namespace

double squared_distance(const double* a, const double* b, std::size_t len) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= len; i += 8) {
        const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4));
        acc0 = _mm256_fmadd_pd(d0, d0, acc0);
        acc1 = _mm256_fmadd_pd(d1, d1, acc1);
    }
    for (; i + 4 <= len; i += 4) {
        const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc0 = _mm256_fmadd_pd(d0, d0, acc0);
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < len; ++i) {
        const double diff = a[i] - b[i];
        acc += diff * diff;
    }
    return acc;
}

double sum(const double* x, std::size_t len) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= len; i += 8) {
        acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
        acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(x + i + 4));
    }
    for (; i + 4 <= len; i += 4) acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < len; ++i) acc += x[i];
    return acc;
}

PairMoments pair_moments(const double* x, const double* y, std::size_t len) {
    __m256d sx = _mm256_setzero_pd();
    __m256d sy = _mm256_setzero_pd();
    __m256d sxx = _mm256_setzero_pd();
    __m256d syy = _mm256_setzero_pd();
    __m256d sxy = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= len; i += 4) {
        const __m256d vx = _mm256_loadu_pd(x + i);
        const __m256d vy = _mm256_loadu_pd(y + i);
        sx = _mm256_add_pd(sx, vx);
        sy = _mm256_add_pd(sy, vy);
        sxx = _mm256_fmadd_pd(vx, vx, sxx);
        syy = _mm256_fmadd_pd(vy, vy, syy);
        sxy = _mm256_fmadd_pd(vx, vy, sxy);
    }
    PairMoments m{hsum(sx), hsum(sy), hsum(sxx), hsum(syy), hsum(sxy)};
    for (; i < len; ++i) {
        m.sum_x += x[i];
        m.sum_y += y[i];
        m.sum_xx += x[i] * x[i];
        m.sum_yy += y[i] * y[i];
        m.sum_xy += x[i] * y[i];
    }
    return m;
}

}  // namespace cvibench::simd::avx2
