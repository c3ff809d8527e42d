#include "cvibench/external_cvi.hpp"

#include <stdexcept>

#include "cvibench/error.hpp"

namespace cvibench {

namespace {

std::int64_t choose2(std::int64_t m) { return m * (m - 1) / 2; }

}  // namespace

ContingencyTable ContingencyTable::build(const Partition& rows, const Partition& cols) {
    if (rows.size() != cols.size()) throw std::invalid_argument("contingency table: object counts differ");
    ContingencyTable t;
    const auto r = static_cast<std::size_t>(rows.k());
    const auto c = static_cast<std::size_t>(cols.k());
    t.counts.assign(r, std::vector<std::int64_t>(c, 0));
    t.row_sums.assign(r, 0);
    t.col_sums.assign(c, 0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto a = static_cast<std::size_t>(rows[i] - 1);
        const auto b = static_cast<std::size_t>(cols[i] - 1);
        ++t.counts[a][b];
        ++t.row_sums[a];
        ++t.col_sums[b];
    }
    t.total = static_cast<std::int64_t>(rows.size());
    return t;
}

SimilarityValue adjusted_rand_detail(const Partition& p, const Partition& q) {
    if (p.size() != q.size()) throw std::invalid_argument("adjusted_rand: partitions differ in size");
    if (p.size() < 2) throw std::invalid_argument("adjusted_rand: need at least two objects");
    const auto t = ContingencyTable::build(p, q);

    SimilarityValue s;
    s.pairs_total = choose2(t.total);
    for (const auto& row : t.counts)
        for (auto v : row) s.pairs_together += choose2(v);
    for (auto v : t.row_sums) s.pairs_rows += choose2(v);
    for (auto v : t.col_sums) s.pairs_cols += choose2(v);

    __extension__ typedef __int128 wide;
    const wide pairs = s.pairs_total;
    const wide a = s.pairs_rows;
    const wide b = s.pairs_cols;
    const wide numerator = 2 * (static_cast<wide>(s.pairs_together) * pairs - a * b);
    const wide denominator = (a + b) * pairs - 2 * a * b;
    if (denominator == 0)
        throw DegenerateError("adjusted_rand: zero denominator (no pair structure to compare)",
                              "ari_denominator_zero");
    s.value = static_cast<double>(static_cast<long double>(numerator) / static_cast<long double>(denominator));
    return s;
}

double adjusted_rand(const Partition& p, const Partition& q) { return adjusted_rand_detail(p, q).value; }

}  // namespace cvibench
