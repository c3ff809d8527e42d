#include "cvibench/simd/kernels.hpp"

namespace cvibench::simd::scalar {

double squared_distance(const double* a, const double* b, std::size_t len) {
    double acc = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
        const double diff = a[i] - b[i];
        acc += diff * diff;
    }
    return acc;
}

double sum(const double* x, std::size_t len) {
    double acc = 0.0;
    for (std::size_t i = 0; i < len; ++i) acc += x[i];
    return acc;
}

PairMoments pair_moments(const double* x, const double* y, std::size_t len) {
    PairMoments m;
    for (std::size_t i = 0; i < len; ++i) {
        m.sum_x += x[i];
        m.sum_y += y[i];
        m.sum_xx += x[i] * x[i];
        m.sum_yy += y[i] * y[i];
        m.sum_xy += x[i] * y[i];
    }
    return m;
}

}  // namespace cvibench::simd::scalar
