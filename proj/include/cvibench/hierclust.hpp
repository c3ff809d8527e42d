#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cvibench/data.hpp"
#include "cvibench/partition.hpp"

namespace cvibench {

/// One agglomeration step. Node ids: leaves 1..n, internal nodes n+1..2n-1
/// in merge order (merge t creates node n+1+t). left < right always.
struct Merge {
    std::size_t left = 0;
    std::size_t right = 0;
    double height = 0.0;
    std::size_t size = 0;
};

struct Dendrogram {
    std::size_t n = 0;
    std::vector<Merge> merges;

    std::size_t root() const noexcept { return 2 * n - 1; }
};

/**
 * Average-linkage (UPGMA) agglomeration.
 *
 * At each step the active pair with the smallest average inter-cluster
 * distance is merged; equal distances resolve to the pair with the
 * lexicographically smallest (smaller node id, larger node id). Distances
 * to the new node follow the Lance-Williams average rule
 * D(A+B, C) = (|A| D(A,C) + |B| D(B,C)) / (|A| + |B|).
 */
Dendrogram upgma(const DistanceMatrix& d);

/// Undoes the last k-1 merges. Clusters are labelled 1..k in order of their
/// smallest leaf. Throws ConfigError unless 1 <= k <= n.
Partition cut_k(const Dendrogram& tree, std::size_t k);

/// cut_k for every k in [k_min, k_max]. Requires 2 <= k_min <= k_max <= n.
PartitionSet cut_range(const Dendrogram& tree, std::size_t k_min, std::size_t k_max);

/// Throws std::logic_error if the structural invariants do not hold
/// (child uniqueness, sizes, non-decreasing heights within 1e-12).
void check_dendrogram(const Dendrogram& tree);

/// {"n": .., "merges": [{"left":..,"right":..,"height":..,"size":..}, ...]}
std::string dendrogram_to_json(const Dendrogram& tree);

}  // namespace cvibench
