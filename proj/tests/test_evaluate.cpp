#include "doctest.h"

#include <cmath>
#include <random>

#include "cvibench/data.hpp"
#include "cvibench/error.hpp"
#include "cvibench/evaluate.hpp"
#include "cvibench/hierclust.hpp"
#include "support/oracles.hpp"

using namespace cvibench;

namespace {

std::vector<CviValue> values_of(const std::vector<double>& v, int k0 = 2) {
    std::vector<CviValue> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back({cvi_spec(CviKind::calinski_harabasz), k0 + static_cast<int>(i), v[i]});
    return out;
}

std::size_t best_of(const std::vector<double>& v, Direction dir) { return select_best(values_of(v), dir); }

}  // namespace

TEST_CASE("select_best") {
    CHECK(best_of({4.0}, Direction::maximize) == 0);
    CHECK(best_of({3.0, 3.0}, Direction::maximize) == 0);
    CHECK(best_of({1.0, 5.0, 2.0}, Direction::maximize) == 1);
    CHECK(best_of({1.0, 5.0, 0.5}, Direction::minimize) == 2);
    // Ties prefer the smaller k even when it comes later in the input.
    std::vector<CviValue> v{{cvi_spec(CviKind::davies_bouldin), 5, 1.0}, {cvi_spec(CviKind::davies_bouldin), 3, 1.0}};
    CHECK(select_best(v, Direction::minimize) == 1);
    // Equal k: input order.
    std::vector<CviValue> w{{cvi_spec(CviKind::davies_bouldin), 4, 1.0}, {cvi_spec(CviKind::davies_bouldin), 4, 1.0}};
    CHECK(select_best(w, Direction::minimize) == 0);
    CHECK_THROWS_AS(select_best(std::vector<CviValue>{}, Direction::maximize), std::invalid_argument);
}

TEST_CASE("milligan_cooper_score") {
    const auto ch = milligan_cooper_score(8, 3);
    CHECK(ch.value == 0.0);
    CHECK(*ch.detail.k_delta == 5);
    const auto db = milligan_cooper_score(2, 3);
    CHECK(db.value == 0.0);
    CHECK(*db.detail.k_delta == -1);
    CHECK(milligan_cooper_score(3, 3).value == 1.0);
}

TEST_CASE("gurrutxaga_score") {
    const std::vector<double> s{0.1, 0.79, 0.77};
    CHECK(gurrutxaga_score(1, s).value == 1.0);
    CHECK(gurrutxaga_score(2, s).value == 0.0);
    const std::vector<double> flat{0.4, 0.4, 0.4};
    for (std::size_t i = 0; i < flat.size(); ++i) CHECK(gurrutxaga_score(i, flat).value == 1.0);
    CHECK_THROWS(gurrutxaga_score(3, s));
}

TEST_CASE("new_goodness") {
    const std::vector<double> s{-0.002, 0.4, 0.7929, 0.7755};
    CHECK(new_goodness(2, s).value == 1.0);
    CHECK(new_goodness(3, s).value == doctest::Approx(0.7755 / 0.7929));
    CHECK(new_goodness(0, s).value < 0.0);
    try {
        new_goodness(0, std::vector<double>{-0.1, 0.0});
        FAIL("expected DegenerateError");
    } catch (const DegenerateError& e) {
        CHECK(e.reason() == "max_similarity_not_positive");
    }
}

TEST_CASE("vendramin_score") {
    const std::vector<double> v{0.1, 0.5, 0.3, 0.9};
    CHECK(vendramin_score(v, v).value == doctest::Approx(1.0));
    CHECK(vendramin_score(v, v, CorrelationMethod::spearman).value == doctest::Approx(1.0));
    const auto s = vendramin_score(v, v, CorrelationMethod::pearson, Direction::minimize);
    CHECK(s.value == doctest::Approx(1.0));  // raw, not negated
    CHECK(*s.detail.variants->pearson_oriented == doctest::Approx(-1.0));
    CHECK(*s.detail.method == CorrelationMethod::pearson);
    CHECK_THROWS_AS(vendramin_score(std::vector<double>{1, 1, 1}, std::span<const double>(v).first(3)), DegenerateError);
    CHECK_THROWS_AS(vendramin_score(std::span<const double>(v).first(2), std::span<const double>(v).first(2)), DegenerateError);
}

TEST_CASE("vendramin_score: hand Pearson and Spearman values") {
    // x = (1,2,3,4), y = (1,3,2,4): Pearson = Spearman = 0.8.
    const std::vector<double> x{1, 2, 3, 4};
    const std::vector<double> y{1, 3, 2, 4};
    CHECK(vendramin_score(x, y).value == doctest::Approx(0.8).epsilon(1e-14));
    // Spearman of (1,2,3,100) vs y is still 0.8; Pearson is not.
    const std::vector<double> bent{1, 2, 3, 100};
    CHECK(vendramin_score(bent, y, CorrelationMethod::spearman).value == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(vendramin_score(bent, y).value != doctest::Approx(0.8));
}

TEST_CASE("protocol invariants on random sequences") {
    std::mt19937_64 rng(99);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int rep = 0; rep < 500; ++rep) {
        const std::size_t m = 3 + rng() % 20;
        std::vector<double> v(m), s(m);
        for (auto& x : v) x = g(rng);
        for (auto& x : s) x = std::abs(g(rng)) * 0.5;
        // Occasional exact ties in similarity.
        if (rep % 5 == 0) s[rng() % m] = *std::max_element(s.begin(), s.end());

        for (auto dir : {Direction::maximize, Direction::minimize}) {
            const std::size_t b = best_of(v, dir);
            const auto ng = new_goodness(b, s);
            const auto gz = gurrutxaga_score(b, s);
            CHECK(ng.value <= 1.0);
            CHECK((ng.value == 1.0) == (gz.value == 1.0));
            CHECK((gz.value == 0.0 || gz.value == 1.0));

            // Strictly increasing transforms keep the chosen partition.
            std::vector<double> e(v), affine(v);
            for (auto& x : e) x = std::exp(x);
            for (auto& x : affine) x = 2.0 * x + 3.0;
            CHECK(new_goodness(best_of(e, dir), s).value == ng.value);
            CHECK(new_goodness(best_of(affine, dir), s).value == ng.value);

            // Spearman is rank-based; Pearson is not in general.
            CHECK(vendramin_score(e, s, CorrelationMethod::spearman).value ==
                  doctest::Approx(vendramin_score(v, s, CorrelationMethod::spearman).value).epsilon(1e-12));

            // Dropping a partition that is neither CVI-best nor ARI-best.
            const auto top = static_cast<std::size_t>(std::max_element(s.begin(), s.end()) - s.begin());
            for (std::size_t drop = 0; drop < m; ++drop) {
                if (drop == b || drop == top) continue;
                std::vector<CviValue> vv;
                std::vector<double> ss;
                for (std::size_t i = 0; i < m; ++i) {
                    if (i == drop) continue;
                    vv.push_back({cvi_spec(CviKind::calinski_harabasz), static_cast<int>(i) + 2, v[i]});
                    ss.push_back(s[i]);
                }
                CHECK(new_goodness(select_best(vv, dir), ss).value == ng.value);
                break;
            }
        }
    }
}

TEST_CASE("Pearson Vendramin score changes under a non-linear monotone transform") {
    const std::vector<double> v{0.0, 1.0, 2.0, 3.0, 4.0};
    const std::vector<double> s{0.1, 0.3, 0.2, 0.6, 0.5};
    std::vector<double> e(v);
    for (auto& x : e) x = std::exp(x);
    CHECK(std::abs(vendramin_score(e, s).value - vendramin_score(v, s).value) > 1e-3);
}

TEST_CASE("evaluate_suite on separated blobs") {
    const std::vector<BlobSpec> spec{{{0.0, 0.0}, 0.2, 15}, {{50.0, 50.0}, 0.2, 15}};
    auto ds = generate_blobs(spec, 5);
    const auto tree = upgma(euclidean_distances(ds.features));
    const auto set = cut_range(tree, 2, 5);
    SuiteOptions opts;
    const auto report = evaluate_suite(ds, set, opts);
    REQUIRE(report.rows.size() == 4);
    CHECK(*report.rows[0].ari == 1.0);
    for (const auto& s : report.summaries) {
        REQUIRE(s.best_row.has_value());
        if (*s.best_k != 2) continue;
        CHECK(s.find(Protocol::new_goodness)->score->value == 1.0);
        CHECK(s.find(Protocol::gurrutxaga)->score->value == 1.0);
        CHECK(s.find(Protocol::milligan_cooper)->score->value == 1.0);
    }
    // The best row belongs to the table and max ARI dominates ARI at best.
    for (const auto& s : report.summaries) {
        double max_ari = -1.0;
        for (const auto& r : report.rows) max_ari = std::max(max_ari, *r.ari);
        CHECK(*s.best_row < report.rows.size());
        CHECK(max_ari >= *s.best_ari);
    }
    CHECK(report.provenance.k_min == 2);
    CHECK(report.provenance.k_max == 5);
    CHECK(report.provenance.n_classes == 2);
}

TEST_CASE("evaluate_suite: no protocols, degenerate cells, size mismatch") {
    const auto ds = parse_csv("1,a\n2,a\n10,b\n11,b\n20,c\n", LabelColumn::at(1), false);
    const auto tree = upgma(euclidean_distances(ds.features));

    SuiteOptions none;
    none.protocols.clear();
    const auto bare = evaluate_suite(ds, cut_range(tree, 2, 5), none);
    CHECK(bare.summaries.size() == 4);
    for (const auto& s : bare.summaries) CHECK(s.protocols.empty());

    // k = n = 5 is outside CH / silhouette / point-biserial ranges; DB is defined.
    const auto& last = bare.rows.back();
    CHECK(last.k == 5);
    CHECK_FALSE(last.cvi[bare.cvi_column(CviKind::calinski_harabasz)].value.has_value());
    CHECK(last.cvi[bare.cvi_column(CviKind::calinski_harabasz)].skip_reason == "k_out_of_range");
    CHECK(last.cvi[bare.cvi_column(CviKind::davies_bouldin)].value.has_value());
    CHECK(bare.summary(CviKind::calinski_harabasz)->skipped == 1);

    PartitionSet wrong;
    wrong.add(Partition({1, 2, 1}), "x");
    CHECK_THROWS_AS(evaluate_suite(ds, wrong, none), ConfigError);
    CHECK_THROWS_AS(evaluate_suite(ds, PartitionSet{}, none), ConfigError);
}

TEST_CASE("evaluate_suite records uncomputable protocols per index") {
    // Every candidate partition is worse than chance -> new_goodness undefined.
    const auto ds = parse_csv("0,a\n1,b\n2,a\n3,b\n", LabelColumn::at(1), false);
    PartitionSet set;
    set.add(Partition({1, 1, 2, 2}), "manual");
    set.add(Partition({1, 2, 2, 1}), "manual");
    set.add(Partition({1, 1, 1, 2}), "manual");
    SuiteOptions opts;
    opts.cvis = {CviKind::davies_bouldin};
    const auto report = evaluate_suite(ds, set, opts);
    const auto* ng = report.summaries[0].find(Protocol::new_goodness);
    REQUIRE(ng != nullptr);
    CHECK_FALSE(ng->score.has_value());
    CHECK(ng->error == "max_similarity_not_positive");
    CHECK(report.summaries[0].find(Protocol::milligan_cooper)->score.has_value());
}

TEST_CASE("vendramin_sweep and aggregation") {
    const std::vector<BlobSpec> spec{{{0.0}, 1.0, 10}, {{8.0}, 1.0, 10}, {{20.0}, 1.0, 10}};
    const auto ds = generate_blobs(spec, 17);
    const auto tree = upgma(euclidean_distances(ds.features));
    SuiteOptions opts;
    const auto report = evaluate_suite(ds, cut_range(tree, 2, 12), opts);

    const std::vector<int> ks{4, 12};
    const auto sweep = vendramin_sweep(report, ks);
    REQUIRE(sweep.size() == 2);
    // The full-range point equals the report's own Vendramin score.
    for (std::size_t c = 0; c < report.cvis.size(); ++c) {
        const auto* v = report.summaries[c].find(Protocol::vendramin);
        REQUIRE(v->score.has_value());
        CHECK(*sweep[1].correlation[c] == doctest::Approx(v->score->value).epsilon(1e-14));
    }
    const std::vector<int> tiny{3};
    CHECK_FALSE(vendramin_sweep(report, tiny)[0].correlation[0].has_value());  // two partitions only

    const std::vector<EvaluationReport> reports{report, report};
    const auto agg = aggregate_new_goodness(reports);
    REQUIRE(agg.size() == report.cvis.size());
    for (std::size_t c = 0; c < agg.size(); ++c) {
        CHECK(agg[c].datasets == 2);
        const double v = report.summaries[c].find(Protocol::new_goodness)->score->value;
        CHECK(*agg[c].mean == doctest::Approx(v));
        CHECK(*agg[c].median == doctest::Approx(v));
    }
}

TEST_CASE("protocol names round-trip") {
    for (auto p : all_protocols()) CHECK(parse_protocol(protocol_name(p)) == p);
    CHECK_FALSE(parse_protocol("no_such_protocol").has_value());
    CHECK(parse_correlation("spearman") == CorrelationMethod::spearman);
}
