#include "cvibench/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cvibench/error.hpp"
#include "cvibench/external_cvi.hpp"
#include "cvibench/stats.hpp"

namespace cvibench {

std::string_view protocol_name(Protocol p) noexcept {
    switch (p) {
        case Protocol::milligan_cooper:
            return "milligan_cooper";
        case Protocol::gurrutxaga:
            return "gurrutxaga";
        case Protocol::vendramin:
            return "vendramin";
        case Protocol::new_goodness:
            return "new_goodness";
    }
    return "unknown";
}

std::optional<Protocol> parse_protocol(std::string_view name) noexcept {
    for (auto p : all_protocols())
        if (protocol_name(p) == name) return p;
    return std::nullopt;
}

std::vector<Protocol> all_protocols() {
    return {Protocol::milligan_cooper, Protocol::gurrutxaga, Protocol::vendramin, Protocol::new_goodness};
}

std::string_view correlation_name(CorrelationMethod m) noexcept {
    return m == CorrelationMethod::spearman ? "spearman" : "pearson";
}

std::optional<CorrelationMethod> parse_correlation(std::string_view name) noexcept {
    if (name == "pearson") return CorrelationMethod::pearson;
    if (name == "spearman") return CorrelationMethod::spearman;
    return std::nullopt;
}

std::size_t select_best(std::span<const CviValue> values, Direction direction) {
    if (values.empty()) throw std::invalid_argument("select_best: no values");
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        const double v = values[i].value;
        const double b = values[best].value;
        const bool better = direction == Direction::maximize ? v > b : v < b;
        if (better || (v == b && values[i].k < values[best].k)) best = i;
    }
    return best;
}

ProtocolScore milligan_cooper_score(int best_k, int n_classes) {
    ProtocolScore s{Protocol::milligan_cooper, best_k == n_classes ? 1.0 : 0.0, {}};
    s.detail.best_k = best_k;
    s.detail.n_classes = n_classes;
    s.detail.k_delta = best_k - n_classes;
    return s;
}

namespace {

std::size_t check_similarity(std::size_t best_index, std::span<const double> similarity, const char* who) {
    if (similarity.empty()) throw std::invalid_argument(std::string(who) + ": empty similarity list");
    if (best_index >= similarity.size()) throw std::invalid_argument(std::string(who) + ": best index out of range");
    return static_cast<std::size_t>(std::max_element(similarity.begin(), similarity.end()) - similarity.begin());
}

std::optional<double> try_corr(std::span<const double> x, std::span<const double> y, CorrelationMethod m) {
    try {
        return m == CorrelationMethod::spearman ? spearman(x, y) : pearson(x, y);
    } catch (const DegenerateError&) {
        return std::nullopt;
    }
}

}  // namespace

ProtocolScore gurrutxaga_score(std::size_t best_index, std::span<const double> similarity) {
    const std::size_t top = check_similarity(best_index, similarity, "gurrutxaga_score");
    ProtocolScore s{Protocol::gurrutxaga, similarity[best_index] == similarity[top] ? 1.0 : 0.0, {}};
    s.detail.best_index = best_index;
    s.detail.best_similarity = similarity[best_index];
    s.detail.max_similarity = similarity[top];
    return s;
}

CorrelationVariants correlation_variants(std::span<const double> cvi_values, std::span<const double> similarity,
                                         Direction direction) {
    std::vector<double> oriented(cvi_values.begin(), cvi_values.end());
    if (direction == Direction::minimize)
        for (double& v : oriented) v = -v;
    CorrelationVariants out;
    out.pearson_raw = try_corr(cvi_values, similarity, CorrelationMethod::pearson);
    out.pearson_oriented = try_corr(oriented, similarity, CorrelationMethod::pearson);
    out.spearman_raw = try_corr(cvi_values, similarity, CorrelationMethod::spearman);
    out.spearman_oriented = try_corr(oriented, similarity, CorrelationMethod::spearman);
    return out;
}

ProtocolScore vendramin_score(std::span<const double> cvi_values, std::span<const double> similarity,
                              CorrelationMethod method, Direction direction) {
    if (cvi_values.size() != similarity.size())
        throw std::invalid_argument("vendramin_score: length mismatch");
    if (cvi_values.size() < 3)
        throw DegenerateError("vendramin_score: need at least three partitions", "too_few_partitions");
    ProtocolScore s{Protocol::vendramin, 0.0, {}};
    try {
        s.value = method == CorrelationMethod::spearman ? spearman(cvi_values, similarity)
                                                        : pearson(cvi_values, similarity);
    } catch (const DegenerateError&) {
        throw DegenerateError("vendramin_score: index values or similarities are constant", "constant_input");
    }
    s.detail.method = method;
    s.detail.n_partitions = cvi_values.size();
    s.detail.variants = correlation_variants(cvi_values, similarity, direction);
    return s;
}

ProtocolScore new_goodness(std::size_t best_index, std::span<const double> similarity) {
    const std::size_t top = check_similarity(best_index, similarity, "new_goodness");
    const double max_s = similarity[top];
    if (!(max_s > 0.0))
        throw DegenerateError("new_goodness: maximal similarity is not positive", "max_similarity_not_positive");
    ProtocolScore s{Protocol::new_goodness, similarity[best_index] / max_s, {}};
    s.detail.best_index = best_index;
    s.detail.best_similarity = similarity[best_index];
    s.detail.max_similarity = max_s;
    return s;
}

const ProtocolOutcome* CviSummary::find(Protocol p) const {
    for (const auto& o : protocols)
        if (o.protocol == p) return &o;
    return nullptr;
}

const CviSummary* EvaluationReport::summary(CviKind kind) const {
    for (const auto& s : summaries)
        if (s.spec.kind == kind) return &s;
    return nullptr;
}

std::size_t EvaluationReport::cvi_column(CviKind kind) const {
    for (std::size_t i = 0; i < cvis.size(); ++i)
        if (cvis[i].kind == kind) return i;
    throw std::out_of_range("report has no column for index");
}

EvaluationReport evaluate_suite(const LabeledDataset& dataset, const PartitionSet& partitions,
                                const SuiteOptions& options) {
    return evaluate_suite(dataset, euclidean_distances(dataset.features), partitions, options);
}

EvaluationReport evaluate_suite(const LabeledDataset& dataset, const DistanceMatrix& distances,
                                const PartitionSet& partitions, const SuiteOptions& options) {
    const std::size_t n = dataset.features.rows();
    if (partitions.empty()) throw ConfigError("evaluate_suite: no partitions");
    if (distances.size() != n) throw std::invalid_argument("evaluate_suite: distances do not match data");
    for (const auto& e : partitions.entries)
        if (e.partition.size() != n)
            throw ConfigError("evaluate_suite: partition size " + std::to_string(e.partition.size()) +
                              " does not match dataset size " + std::to_string(n));

    EvaluationReport report;
    for (auto kind : options.cvis) report.cvis.push_back(cvi_spec(kind));
    report.protocols = options.protocols;

    auto& prov = report.provenance;
    prov.dataset = options.dataset_name;
    prov.n = n;
    prov.p = dataset.features.cols();
    prov.n_classes = dataset.labels.k();
    prov.standardized = dataset.features.standardized();
    prov.method = options.method;
    prov.cvi_options = options.cvi_options;
    prov.k_min = prov.k_max = partitions[0].k();
    for (const auto& e : partitions.entries) {
        prov.k_min = std::min(prov.k_min, e.partition.k());
        prov.k_max = std::max(prov.k_max, e.partition.k());
        if (prov.algorithm.empty()) {
            prov.algorithm = e.algorithm;
        } else if (prov.algorithm != e.algorithm && prov.algorithm != "mixed") {
            prov.algorithm = "mixed";
        }
    }

    // Cells are independent; filled in input order so the report does not
    // depend on evaluation order.
    for (const auto& e : partitions.entries) {
        PartitionRow row;
        row.k = e.partition.k();
        row.algorithm = e.algorithm;
        try {
            row.ari = adjusted_rand(dataset.labels, e.partition);
        } catch (const DegenerateError& err) {
            row.ari_skip_reason = err.reason();
        }
        for (const auto& spec : report.cvis) {
            CviCell cell;
            try {
                cell.value = compute_cvi(spec.kind, dataset.features, distances, e.partition, options.cvi_options);
            } catch (const DegenerateError& err) {
                cell.skip_reason = err.reason();
            }
            row.cvi.push_back(std::move(cell));
        }
        report.rows.push_back(std::move(row));
    }

    // Similarities over rows with a defined ARI.
    std::vector<std::size_t> sim_rows;
    std::vector<double> similarity;
    for (std::size_t r = 0; r < report.rows.size(); ++r) {
        if (report.rows[r].ari) {
            sim_rows.push_back(r);
            similarity.push_back(*report.rows[r].ari);
        }
    }

    for (std::size_t c = 0; c < report.cvis.size(); ++c) {
        const CviSpec spec = report.cvis[c];
        CviSummary summary{spec, {}, {}, {}, {}, 0, {}};
        std::vector<CviValue> values;
        std::vector<std::size_t> value_rows;
        for (std::size_t r = 0; r < report.rows.size(); ++r) {
            const auto& cell = report.rows[r].cvi[c];
            if (!cell.value) {
                ++summary.skipped;
                continue;
            }
            values.push_back({spec, report.rows[r].k, *cell.value});
            value_rows.push_back(r);
        }
        if (!values.empty()) {
            const std::size_t best = value_rows[select_best(values, spec.direction)];
            summary.best_row = best;
            summary.best_value = report.rows[best].cvi[c].value;
            summary.best_k = report.rows[best].k;
            summary.best_ari = report.rows[best].ari;
        }

        for (auto protocol : options.protocols) {
            ProtocolOutcome outcome{protocol, std::nullopt, {}};
            try {
                if (protocol == Protocol::vendramin) {
                    std::vector<double> v;
                    std::vector<double> s;
                    for (std::size_t r : value_rows) {
                        if (!report.rows[r].ari) continue;
                        v.push_back(*report.rows[r].cvi[c].value);
                        s.push_back(*report.rows[r].ari);
                    }
                    auto score = vendramin_score(v, s, options.method, spec.direction);
                    score.detail.k_min = prov.k_min;
                    score.detail.k_max = prov.k_max;
                    outcome.score = std::move(score);
                } else {
                    if (!summary.best_row) throw DegenerateError("no defined index value on any partition", "no_values");
                    if (protocol == Protocol::milligan_cooper) {
                        outcome.score = milligan_cooper_score(*summary.best_k, prov.n_classes);
                    } else {
                        const auto it = std::find(sim_rows.begin(), sim_rows.end(), *summary.best_row);
                        if (it == sim_rows.end())
                            throw DegenerateError("similarity undefined at the best partition", "best_ari_undefined");
                        const auto best_pos = static_cast<std::size_t>(it - sim_rows.begin());
                        auto score = protocol == Protocol::gurrutxaga ? gurrutxaga_score(best_pos, similarity)
                                                                      : new_goodness(best_pos, similarity);
                        score.detail.best_index = *summary.best_row;
                        score.detail.best_k = summary.best_k;
                        outcome.score = std::move(score);
                    }
                }
            } catch (const DegenerateError& err) {
                outcome.error = err.reason();
            }
            summary.protocols.push_back(std::move(outcome));
        }
        report.summaries.push_back(std::move(summary));
    }
    return report;
}

std::vector<SweepPoint> vendramin_sweep(const EvaluationReport& report, std::span<const int> k_max_values,
                                        CorrelationMethod method) {
    std::vector<SweepPoint> out;
    for (int k_max : k_max_values) {
        SweepPoint point{k_max, {}};
        for (std::size_t c = 0; c < report.cvis.size(); ++c) {
            std::vector<double> v;
            std::vector<double> s;
            for (const auto& row : report.rows) {
                if (row.k > k_max || !row.ari || !row.cvi[c].value) continue;
                v.push_back(*row.cvi[c].value);
                s.push_back(*row.ari);
            }
            std::optional<double> r;
            try {
                r = vendramin_score(v, s, method, report.cvis[c].direction).value;
            } catch (const DegenerateError&) {
            }
            point.correlation.push_back(r);
        }
        out.push_back(std::move(point));
    }
    return out;
}

std::vector<GoodnessAggregate> aggregate_new_goodness(std::span<const EvaluationReport> reports) {
    std::vector<GoodnessAggregate> out;
    if (reports.empty()) return out;
    for (const auto& spec : reports.front().cvis) {
        std::vector<double> values;
        for (const auto& rep : reports) {
            const auto* s = rep.summary(spec.kind);
            if (!s) continue;
            const auto* o = s->find(Protocol::new_goodness);
            if (o && o->score) values.push_back(o->score->value);
        }
        GoodnessAggregate agg{spec, values.size(), std::nullopt, std::nullopt};
        if (!values.empty()) {
            agg.mean = mean(values);
            agg.median = median(values);
        }
        out.push_back(agg);
    }
    return out;
}

}  // namespace cvibench
