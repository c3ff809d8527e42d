#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "cvibench/data.hpp"
#include "cvibench/partition.hpp"

namespace cvibench {

enum class CviKind { calinski_harabasz, davies_bouldin, mean_silhouette, point_biserial };

enum class Direction { maximize, minimize };

struct CviSpec {
    CviKind kind;
    std::string_view name;
    Direction direction;

    /// True when `a` is strictly better than `b` under this index.
    bool better(double a, double b) const noexcept {
        return direction == Direction::maximize ? a > b : a < b;
    }
};

CviSpec cvi_spec(CviKind kind) noexcept;

/// The four indices in table order: CH, point-biserial, silhouette, DB.
std::array<CviSpec, 4> all_cvis() noexcept;

std::optional<CviKind> parse_cvi(std::string_view name) noexcept;

/// Silhouette width assigned to members of singleton clusters.
/// `one` follows NbClust; `zero` follows Rousseeuw and the R cluster package.
enum class SingletonSilhouette { zero, one };

/// Within-cluster scatter S_c used by Davies-Bouldin: mean or root mean
/// square of member-to-centroid distances.
enum class DbDispersion { mean, rms };

/// Defaults reproduce NbClust, the toolchain behind the Wine reference values.
struct CviOptions {
    SingletonSilhouette silhouette_singleton = SingletonSilhouette::one;
    DbDispersion db_dispersion = DbDispersion::rms;
};

struct CviValue {
    CviSpec spec;
    int k = 0;
    double value = 0.0;
};

// All indices throw DegenerateError (never return inf/NaN) when undefined:
// k outside the index's valid range, zero within-cluster scatter for CH,
// coincident centroids for DB, a constant pair indicator or constant
// distances for point-biserial.

/// [BGSS/(k-1)] / [WGSS/(n-k)] on coordinates. Valid for 2 <= k <= n-1.
double calinski_harabasz(const DataMatrix& m, const Partition& p);

/// Mean over clusters of max_{j != i} (S_i + S_j) / ||c_i - c_j||. 2 <= k <= n.
double davies_bouldin(const DataMatrix& m, const Partition& p,
                      DbDispersion dispersion = DbDispersion::rms);

/// Mean of (b - a) / max(a, b) over all objects. 2 <= k <= n-1.
double mean_silhouette(const DistanceMatrix& d, const Partition& p,
                       SingletonSilhouette singleton = SingletonSilhouette::one);

/// Pearson correlation between the condensed distances and the pair
/// indicator (1 = different clusters). 2 <= k <= n-1.
double point_biserial(const DistanceMatrix& d, const Partition& p);

double compute_cvi(CviKind kind, const DataMatrix& m, const DistanceMatrix& d, const Partition& p,
                   const CviOptions& options = {});

}  // namespace cvibench
