#pragma once

#include <cstdint>
#include <vector>

#include "cvibench/partition.hpp"

namespace cvibench {

/// counts[c][j] = |class c+1 ∩ cluster j+1|.
struct ContingencyTable {
    std::vector<std::vector<std::int64_t>> counts;
    std::vector<std::int64_t> row_sums;
    std::vector<std::int64_t> col_sums;
    std::int64_t total = 0;

    static ContingencyTable build(const Partition& rows, const Partition& cols);
};

/// Adjusted Rand index with the pair counts it was formed from.
struct SimilarityValue {
    double value = 0.0;
    std::int64_t pairs_total = 0;     // C(n,2)
    std::int64_t pairs_together = 0;  // sum C(n_cj,2)
    std::int64_t pairs_rows = 0;      // sum C(a_c,2)
    std::int64_t pairs_cols = 0;      // sum C(b_j,2)
};

/**
 * Hubert-Arabie adjusted Rand index.
 *
 * Evaluated exactly in 128-bit integers up to the final division:
 * ARI = 2 (T*N - A*B) / ((A+B)*N - 2*A*B), with T = sum C(n_cj,2),
 * A, B the row/column pair sums and N = C(n,2).
 * Throws std::invalid_argument on size mismatch, DegenerateError when the
 * denominator is zero (e.g. both partitions all-singletons).
 */
SimilarityValue adjusted_rand_detail(const Partition& p, const Partition& q);

double adjusted_rand(const Partition& p, const Partition& q);

}  // namespace cvibench
