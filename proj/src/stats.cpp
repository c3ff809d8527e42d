#include "cvibench/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cvibench/error.hpp"
#include "cvibench/simd/kernels.hpp"

namespace cvibench {

double mean(std::span<const double> x) {
    if (x.empty()) throw std::invalid_argument("mean: empty input");
    return simd::sum(x) / static_cast<double>(x.size());
}

double median(std::vector<double> x) {
    if (x.empty()) throw std::invalid_argument("median: empty input");
    std::sort(x.begin(), x.end());
    const std::size_t mid = x.size() / 2;
    return x.size() % 2 == 1 ? x[mid] : 0.5 * (x[mid - 1] + x[mid]);
}

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("pearson: length mismatch");
    if (x.size() < 2) throw DegenerateError("pearson: need at least two observations", "too_few");
    // Two passes: centre, then accumulate cross products.
    const double mx = mean(x);
    const double my = mean(y);
    std::vector<double> cx(x.size());
    std::vector<double> cy(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        cx[i] = x[i] - mx;
        cy[i] = y[i] - my;
    }
    const auto m = simd::pair_moments(cx, cy);
    if (!(m.sum_xx > 0.0) || !(m.sum_yy > 0.0))
        throw DegenerateError("pearson: constant input", "constant_input");
    const double r = m.sum_xy / std::sqrt(m.sum_xx * m.sum_yy);
    return std::clamp(r, -1.0, 1.0);
}

std::vector<double> average_ranks(std::span<const double> x) {
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> ranks(x.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
        const double r = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = r;
        i = j + 1;
    }
    return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    return pearson(rx, ry);
}

}  // namespace cvibench
