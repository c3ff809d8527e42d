#include "cvibench/internal_cvi.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "cvibench/error.hpp"
#include "cvibench/simd/kernels.hpp"
#include "cvibench/stats.hpp"

namespace cvibench {

namespace {

void require_k(const char* index, const Partition& p, std::size_t k_max) {
    const auto k = static_cast<std::size_t>(p.k());
    if (k < 2 || k > k_max)
        throw DegenerateError(std::string(index) + ": k=" + std::to_string(k) + " outside 2.." +
                                  std::to_string(k_max),
                              "k_out_of_range");
}

void require_size(const char* index, std::size_t n, const Partition& p) {
    if (p.size() != n)
        throw std::invalid_argument(std::string(index) + ": partition size does not match data");
}

// k x p matrix of cluster means.
std::vector<double> centroids(const DataMatrix& m, const Partition& p) {
    const std::size_t k = static_cast<std::size_t>(p.k());
    const std::size_t cols = m.cols();
    std::vector<double> c(k * cols, 0.0);
    const auto sizes = p.cluster_sizes();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const std::size_t g = static_cast<std::size_t>(p[i] - 1);
        const auto row = m.row(i);
        for (std::size_t j = 0; j < cols; ++j) c[g * cols + j] += row[j];
    }
    for (std::size_t g = 0; g < k; ++g)
        for (std::size_t j = 0; j < cols; ++j) c[g * cols + j] /= static_cast<double>(sizes[g]);
    return c;
}

}  // namespace

CviSpec cvi_spec(CviKind kind) noexcept {
    switch (kind) {
        case CviKind::calinski_harabasz:
            return {kind, "calinski_harabasz", Direction::maximize};
        case CviKind::davies_bouldin:
            return {kind, "davies_bouldin", Direction::minimize};
        case CviKind::mean_silhouette:
            return {kind, "mean_silhouette", Direction::maximize};
        case CviKind::point_biserial:
            return {kind, "point_biserial", Direction::maximize};
    }
    return {kind, "unknown", Direction::maximize};
}

std::array<CviSpec, 4> all_cvis() noexcept {
    return {cvi_spec(CviKind::calinski_harabasz), cvi_spec(CviKind::point_biserial),
            cvi_spec(CviKind::mean_silhouette), cvi_spec(CviKind::davies_bouldin)};
}

std::optional<CviKind> parse_cvi(std::string_view name) noexcept {
    if (name == "calinski_harabasz" || name == "ch") return CviKind::calinski_harabasz;
    if (name == "davies_bouldin" || name == "db") return CviKind::davies_bouldin;
    if (name == "mean_silhouette" || name == "asw" || name == "silhouette") return CviKind::mean_silhouette;
    if (name == "point_biserial" || name == "pb") return CviKind::point_biserial;
    return std::nullopt;
}

double calinski_harabasz(const DataMatrix& m, const Partition& p) {
    const std::size_t n = m.rows();
    require_size("calinski_harabasz", n, p);
    require_k("calinski_harabasz", p, n - 1);
    const std::size_t k = static_cast<std::size_t>(p.k());
    const std::size_t cols = m.cols();

    std::vector<double> grand(cols, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < cols; ++j) grand[j] += m(i, j);
    for (double& g : grand) g /= static_cast<double>(n);

    const auto c = centroids(m, p);
    const auto sizes = p.cluster_sizes();
    double bgss = 0.0;
    for (std::size_t g = 0; g < k; ++g)
        bgss += static_cast<double>(sizes[g]) *
                simd::squared_distance({c.data() + g * cols, cols}, grand);
    double wgss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t g = static_cast<std::size_t>(p[i] - 1);
        wgss += simd::squared_distance(m.row(i), {c.data() + g * cols, cols});
    }
    if (!(wgss > 0.0))
        throw DegenerateError("calinski_harabasz: within-cluster sum of squares is zero", "wgss_zero");
    return (bgss / static_cast<double>(k - 1)) / (wgss / static_cast<double>(n - k));
}

double davies_bouldin(const DataMatrix& m, const Partition& p, DbDispersion dispersion) {
    const std::size_t n = m.rows();
    require_size("davies_bouldin", n, p);
    require_k("davies_bouldin", p, n);
    const std::size_t k = static_cast<std::size_t>(p.k());
    const std::size_t cols = m.cols();
    const auto c = centroids(m, p);
    const auto sizes = p.cluster_sizes();

    std::vector<double> scatter(k, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t g = static_cast<std::size_t>(p[i] - 1);
        const double sq = simd::squared_distance(m.row(i), {c.data() + g * cols, cols});
        scatter[g] += dispersion == DbDispersion::rms ? sq : std::sqrt(sq);
    }
    for (std::size_t g = 0; g < k; ++g) {
        scatter[g] /= static_cast<double>(sizes[g]);
        if (dispersion == DbDispersion::rms) scatter[g] = std::sqrt(scatter[g]);
    }

    double total = 0.0;
    for (std::size_t a = 0; a < k; ++a) {
        double worst = -std::numeric_limits<double>::infinity();
        for (std::size_t b = 0; b < k; ++b) {
            if (a == b) continue;
            const double sep = std::sqrt(
                simd::squared_distance({c.data() + a * cols, cols}, {c.data() + b * cols, cols}));
            if (!(sep > 0.0))
                throw DegenerateError("davies_bouldin: clusters " + std::to_string(a + 1) + " and " +
                                          std::to_string(b + 1) + " have coincident centroids",
                                      "coincident_centroids");
            worst = std::max(worst, (scatter[a] + scatter[b]) / sep);
        }
        total += worst;
    }
    return total / static_cast<double>(k);
}

double mean_silhouette(const DistanceMatrix& d, const Partition& p, SingletonSilhouette singleton) {
    const std::size_t n = d.size();
    require_size("mean_silhouette", n, p);
    require_k("mean_silhouette", p, n - 1);
    const std::size_t k = static_cast<std::size_t>(p.k());
    const auto sizes = p.cluster_sizes();

    // sums[i*k + g] = total distance from object i to members of cluster g.
    std::vector<double> sums(n * k, 0.0);
    const auto cond = d.condensed();
    std::size_t idx = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const auto gi = static_cast<std::size_t>(p[i] - 1);
        for (std::size_t j = i + 1; j < n; ++j, ++idx) {
            const auto gj = static_cast<std::size_t>(p[j] - 1);
            sums[i * k + gj] += cond[idx];
            sums[j * k + gi] += cond[idx];
        }
    }

    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto own = static_cast<std::size_t>(p[i] - 1);
        if (sizes[own] == 1) {
            total += singleton == SingletonSilhouette::one ? 1.0 : 0.0;
            continue;
        }
        const double a = sums[i * k + own] / static_cast<double>(sizes[own] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t g = 0; g < k; ++g)
            if (g != own) b = std::min(b, sums[i * k + g] / static_cast<double>(sizes[g]));
        const double scale = std::max(a, b);
        if (scale > 0.0) total += (b - a) / scale;
    }
    return total / static_cast<double>(n);
}

double point_biserial(const DistanceMatrix& d, const Partition& p) {
    const std::size_t n = d.size();
    require_size("point_biserial", n, p);
    require_k("point_biserial", p, n - 1);
    std::vector<double> between;
    between.reserve(d.condensed().size());
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) between.push_back(p[i] != p[j] ? 1.0 : 0.0);
    // 2 <= k <= n-1 guarantees both pair types exist.
    try {
        return pearson(d.condensed(), between);
    } catch (const DegenerateError&) {
        throw DegenerateError("point_biserial: all distances are equal", "constant_distances");
    }
}

double compute_cvi(CviKind kind, const DataMatrix& m, const DistanceMatrix& d, const Partition& p,
                   const CviOptions& options) {
    switch (kind) {
        case CviKind::calinski_harabasz:
            return calinski_harabasz(m, p);
        case CviKind::davies_bouldin:
            return davies_bouldin(m, p, options.db_dispersion);
        case CviKind::mean_silhouette:
            return mean_silhouette(d, p, options.silhouette_singleton);
        case CviKind::point_biserial:
            return point_biserial(d, p);
    }
    throw std::invalid_argument("compute_cvi: unknown index");
}

}  // namespace cvibench
