#include "cvibench/partition.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "cvibench/error.hpp"
#include "csv_reader.hpp"

namespace cvibench {

Partition::Partition(std::vector<int> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) throw std::invalid_argument("partition: no objects");
    const int k = *std::max_element(labels_.begin(), labels_.end());
    if (*std::min_element(labels_.begin(), labels_.end()) < 1)
        throw std::invalid_argument("partition: labels must be >= 1");
    std::vector<bool> used(static_cast<std::size_t>(k), false);
    for (int l : labels_) used[static_cast<std::size_t>(l - 1)] = true;
    if (std::find(used.begin(), used.end(), false) != used.end())
        throw std::invalid_argument("partition: labels must cover 1..k without gaps");
    k_ = k;
}

Partition Partition::from_ids(std::span<const long long> ids) {
    std::unordered_map<long long, int> dense;
    std::vector<int> labels;
    labels.reserve(ids.size());
    for (long long id : ids) {
        auto [it, fresh] = dense.try_emplace(id, static_cast<int>(dense.size()) + 1);
        labels.push_back(it->second);
    }
    return Partition(std::move(labels));
}

std::vector<std::size_t> Partition::cluster_sizes() const {
    std::vector<std::size_t> sizes(static_cast<std::size_t>(k_), 0);
    for (int l : labels_) ++sizes[static_cast<std::size_t>(l - 1)];
    return sizes;
}

std::vector<std::vector<std::size_t>> Partition::members() const {
    std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(k_));
    for (std::size_t i = 0; i < labels_.size(); ++i)
        out[static_cast<std::size_t>(labels_[i] - 1)].push_back(i);
    return out;
}

Partition Partition::canonical() const {
    std::vector<long long> ids(labels_.begin(), labels_.end());
    return from_ids(ids);
}

bool Partition::same_grouping(const Partition& other) const {
    return size() == other.size() && canonical() == other.canonical();
}

void PartitionSet::add(Partition p, std::string algorithm) {
    if (!entries.empty() && entries.front().partition.size() != p.size())
        throw std::invalid_argument("partition set: object counts differ");
    entries.push_back({std::move(p), std::move(algorithm)});
}

Partition load_partition_csv(const std::string& path, std::size_t expected_n) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open partition file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const auto records = detail::parse_csv_records(buf.str());

    std::vector<std::string> cluster_of(expected_n);
    std::vector<bool> seen(expected_n, false);
    std::size_t filled = 0;
    for (std::size_t r = 0; r < records.size(); ++r) {
        const auto& rec = records[r];
        const auto where = path + ":" + std::to_string(rec.line);
        if (rec.fields.size() != 2) throw DataError(where + ": expected object_id,cluster");
        const auto id = detail::parse_integer(rec.fields[0]);
        if (!id) {
            if (r == 0) continue;  // header
            throw DataError(where + ": object id is not an integer");
        }
        if (*id < 1 || static_cast<std::size_t>(*id) > expected_n)
            throw DataError(where + ": object id out of range 1.." + std::to_string(expected_n));
        const auto idx = static_cast<std::size_t>(*id - 1);
        if (seen[idx]) throw DataError(where + ": duplicate object id " + rec.fields[0]);
        seen[idx] = true;
        cluster_of[idx] = rec.fields[1];
        ++filled;
    }
    if (filled != expected_n)
        throw DataError(path + ": expected " + std::to_string(expected_n) + " objects, found " +
                        std::to_string(filled));

    std::map<std::string, long long> ids;
    std::vector<long long> raw;
    raw.reserve(expected_n);
    for (const auto& c : cluster_of) {
        auto [it, fresh] = ids.try_emplace(c, static_cast<long long>(ids.size()));
        raw.push_back(it->second);
    }
    return Partition::from_ids(raw);
}

}  // namespace cvibench
