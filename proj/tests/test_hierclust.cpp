#include "doctest.h"

#include <random>
#include <cstdio>
#include <fstream>
#include <set>

#include "cvibench/error.hpp"
#include "cvibench/hierclust.hpp"
#include "support/oracles.hpp"

using namespace cvibench;

namespace {

DistanceMatrix from_matrix(const oracle::Matrix& m) { return DistanceMatrix(m.size(), oracle::condense(m)); }

// Cluster of every object, as sets, for containment checks.
std::vector<std::set<std::size_t>> clusters(const Partition& p) {
    std::vector<std::set<std::size_t>> out;
    for (const auto& m : p.members()) out.emplace_back(m.begin(), m.end());
    return out;
}

}  // namespace

TEST_CASE("upgma: two objects") {
    const auto tree = upgma(DistanceMatrix(2, {7.0}));
    REQUIRE(tree.merges.size() == 1);
    CHECK(tree.merges[0].left == 1);
    CHECK(tree.merges[0].right == 2);
    CHECK(tree.merges[0].height == 7.0);
    CHECK(tree.merges[0].size == 2);
}

TEST_CASE("upgma: three objects use the average rule") {
    // d(1,2)=1, d(1,3)=2, d(2,3)=3; after merging {1,2}: (2+3)/2 = 2.5.
    const auto tree = upgma(DistanceMatrix(3, {1.0, 2.0, 3.0}));
    REQUIRE(tree.merges.size() == 2);
    CHECK(tree.merges[0].left == 1);
    CHECK(tree.merges[0].right == 2);
    CHECK(tree.merges[0].height == 1.0);
    CHECK(tree.merges[1].left == 3);
    CHECK(tree.merges[1].right == 4);
    CHECK(tree.merges[1].height == 2.5);
    check_dendrogram(tree);

    const auto p = cut_k(tree, 2);
    CHECK(p.labels()[0] == 1);
    CHECK(p.labels()[1] == 1);
    CHECK(p.labels()[2] == 2);
}

TEST_CASE("upgma: ties go to the lexicographically smallest pair") {
    // All distances equal. After (1,2) -> node 5 the pairs (3,4), (3,5) and
    // (4,5) tie at 1; (3,4) is smallest.
    const auto tree = upgma(DistanceMatrix(4, std::vector<double>(6, 1.0)));
    CHECK(tree.merges[0].left == 1);
    CHECK(tree.merges[0].right == 2);
    CHECK(tree.merges[1].left == 3);
    CHECK(tree.merges[1].right == 4);
    CHECK(tree.merges[2].left == 5);
    CHECK(tree.merges[2].right == 6);
}

TEST_CASE("upgma: matches brute-force average linkage on random matrices") {
    std::mt19937_64 rng(20240501);
    int compared = 0;
    for (std::size_t n = 2; n <= 8; ++n) {
        for (int rep = 0; rep < 40; ++rep) {
            const auto m = oracle::random_symmetric(n, rng);
            const auto tree = upgma(from_matrix(m));
            check_dendrogram(tree);
            const auto naive = oracle::naive_upgma(m);
            REQUIRE(naive.size() == tree.merges.size());
            bool distinct = true;
            for (std::size_t t = 0; t < naive.size(); ++t) {
                CHECK_NEAR(tree.merges[t].height, naive[t].height, 1e-9);
                distinct = distinct && naive[t].runner_up_gap > 1e-9;
                if (distinct) {
                    CHECK(tree.merges[t].left == naive[t].left);
                    CHECK(tree.merges[t].right == naive[t].right);
                }
            }
            ++compared;
        }
    }
    CHECK(compared >= 100);
}

TEST_CASE("upgma: tie handling matches the brute-force rule on integer distances") {
    // Small integer distances force many exact ties; averages of integers
    // over small cluster sizes stay exact enough for both routes to agree.
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> u(1, 3);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t n = 3 + rng() % 4;
        oracle::Matrix m(n, std::vector<double>(n, 0.0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) m[i][j] = m[j][i] = u(rng);
        const auto tree = upgma(from_matrix(m));
        const auto naive = oracle::naive_upgma(m);
        for (std::size_t t = 0; t < naive.size(); ++t) {
            CHECK(tree.merges[t].height == doctest::Approx(naive[t].height));
            CHECK(tree.merges[t].left == naive[t].left);
            CHECK(tree.merges[t].right == naive[t].right);
        }
    }
}

TEST_CASE("upgma: heights are non-decreasing on larger inputs") {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int rep = 0; rep < 10; ++rep) {
        const std::size_t n = 50 + rng() % 50, p = 3;
        std::vector<double> v(n * p);
        for (auto& x : v) x = g(rng);
        const auto tree = upgma(euclidean_distances(DataMatrix(n, p, v)));
        CHECK_NOTHROW(check_dendrogram(tree));
        for (std::size_t t = 1; t < tree.merges.size(); ++t)
            CHECK(tree.merges[t].height >= tree.merges[t - 1].height - 1e-12);
        CHECK(tree.merges.back().size == n);
    }
}

TEST_CASE("cut_k: extremes, labels and errors") {
    std::mt19937_64 rng(4);
    const auto tree = upgma(from_matrix(oracle::random_symmetric(6, rng)));
    const auto one = cut_k(tree, 1);
    CHECK(one.k() == 1);
    const auto all = cut_k(tree, 6);
    CHECK(all.k() == 6);
    for (std::size_t i = 0; i < 6; ++i) CHECK(all[i] == static_cast<int>(i) + 1);
    for (std::size_t k = 1; k <= 6; ++k) {
        const auto p = cut_k(tree, k);
        CHECK(p.k() == static_cast<int>(k));
        CHECK(p == p.canonical());  // labelled by smallest leaf
    }
    CHECK_THROWS_AS(cut_k(tree, 0), ConfigError);
    CHECK_THROWS_AS(cut_k(tree, 7), ConfigError);
}

TEST_CASE("cut_k: tied heights still yield exactly k clusters") {
    const auto tree = upgma(DistanceMatrix(4, std::vector<double>(6, 1.0)));
    for (std::size_t k = 1; k <= 4; ++k) CHECK(cut_k(tree, k).k() == static_cast<int>(k));
}

TEST_CASE("cut_range: sizes, degenerate range, nestedness") {
    std::mt19937_64 rng(12);
    std::normal_distribution<double> g(0.0, 1.0);
    const std::size_t n = 30;
    std::vector<double> v(n * 2);
    for (auto& x : v) x = g(rng);
    const auto tree = upgma(euclidean_distances(DataMatrix(n, 2, v)));

    CHECK(cut_range(tree, 2, 2).size() == 1);
    CHECK(cut_range(tree, 2, 2)[0].k() == 2);
    CHECK(cut_range(tree, 2, 15).size() == 14);
    CHECK_THROWS_AS(cut_range(tree, 1, 5), ConfigError);
    CHECK_THROWS_AS(cut_range(tree, 6, 5), ConfigError);
    CHECK_THROWS_AS(cut_range(tree, 2, n + 1), ConfigError);

    const auto set = cut_range(tree, 2, n);
    for (std::size_t i = 1; i < set.size(); ++i) {
        const auto coarse = clusters(set[i - 1]);
        for (const auto& fine : clusters(set[i])) {
            bool contained = false;
            for (const auto& c : coarse)
                contained = contained || std::includes(c.begin(), c.end(), fine.begin(), fine.end());
            CHECK(contained);
        }
    }
}

TEST_CASE("dendrogram JSON export") {
    const auto json = dendrogram_to_json(upgma(DistanceMatrix(3, {1.0, 2.0, 3.0})));
    CHECK(json.find("\"n\": 3") != std::string::npos);
    CHECK(json.find("\"height\": 2.5") != std::string::npos);
}

TEST_CASE("check_dendrogram rejects broken trees") {
    Dendrogram bad{3, {{1, 2, 2.0, 2}, {3, 4, 1.0, 3}}};
    CHECK_THROWS_AS(check_dendrogram(bad), std::logic_error);
    Dendrogram reused{3, {{1, 2, 1.0, 2}, {1, 4, 2.0, 3}}};
    CHECK_THROWS_AS(check_dendrogram(reused), std::logic_error);
}

TEST_CASE("Partition basics and external ingestion") {
    CHECK_THROWS(Partition({1, 3}));
    CHECK_THROWS(Partition({0, 1}));
    const Partition p({2, 2, 1});
    CHECK(p.k() == 2);
    CHECK(p.canonical() == Partition({1, 1, 2}));
    CHECK(p.same_grouping(Partition({1, 1, 2})));

    const auto path = std::string("test_partition_ingest.csv");
    {
        std::ofstream out(path);
        out << "object_id,cluster\n3,b\n1,a\n2,b\n";
    }
    const auto q = load_partition_csv(path, 3);
    CHECK(q.same_grouping(Partition({1, 2, 2})));
    CHECK_THROWS_AS(load_partition_csv(path, 4), DataError);
    {
        std::ofstream out(path);
        out << "1,a\n1,b\n";
    }
    CHECK_THROWS_AS(load_partition_csv(path, 2), DataError);
    std::remove(path.c_str());
}
