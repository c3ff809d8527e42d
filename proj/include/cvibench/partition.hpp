#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace cvibench {

/**
 * Assignment of n objects to k clusters, labels 1..k, every label used.
 *
 * Used for both algorithm output (clusters) and reference classifications
 * (classes). Labels need not be canonical; canonical() relabels clusters in
 * order of their smallest member index, which is the form cut_k() produces.
 */
class Partition {
public:
    Partition() = default;

    /// Validates that `labels` uses exactly 1..k for some k >= 1.
    explicit Partition(std::vector<int> labels);

    /// Maps arbitrary ids to 1..k in order of first appearance.
    static Partition from_ids(std::span<const long long> ids);

    std::size_t size() const noexcept { return labels_.size(); }
    int k() const noexcept { return k_; }
    std::span<const int> labels() const noexcept { return labels_; }
    int operator[](std::size_t i) const { return labels_[i]; }

    /// Member count per cluster; index 0 holds cluster 1.
    std::vector<std::size_t> cluster_sizes() const;

    /// Object indices (0-based) per cluster; index 0 holds cluster 1.
    std::vector<std::vector<std::size_t>> members() const;

    Partition canonical() const;

    /// Same grouping, possibly different label names.
    bool same_grouping(const Partition& other) const;

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::vector<int> labels_;
    int k_ = 0;
};

/// Ordered evaluation set. All members share the same object count.
struct PartitionSet {
    struct Entry {
        Partition partition;
        std::string algorithm;
    };

    std::vector<Entry> entries;

    void add(Partition p, std::string algorithm);
    std::size_t size() const noexcept { return entries.size(); }
    bool empty() const noexcept { return entries.empty(); }
    const Partition& operator[](std::size_t i) const { return entries[i].partition; }
};

/// Reads `object_id,cluster` rows (header optional, ids 1-based, any order,
/// each object exactly once). Cluster ids may be any token.
Partition load_partition_csv(const std::string& path, std::size_t expected_n);

}  // namespace cvibench
