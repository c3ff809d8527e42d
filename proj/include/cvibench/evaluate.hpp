#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cvibench/data.hpp"
#include "cvibench/internal_cvi.hpp"
#include "cvibench/partition.hpp"

namespace cvibench {

enum class Protocol { milligan_cooper, gurrutxaga, vendramin, new_goodness };

std::string_view protocol_name(Protocol p) noexcept;
std::optional<Protocol> parse_protocol(std::string_view name) noexcept;
std::vector<Protocol> all_protocols();

enum class CorrelationMethod { pearson, spearman };

std::string_view correlation_name(CorrelationMethod m) noexcept;
std::optional<CorrelationMethod> parse_correlation(std::string_view name) noexcept;

/// Every correlation flavour; "oriented" negates min-optimal indices first.
/// A variant is empty when undefined (constant ranks or values).
struct CorrelationVariants {
    std::optional<double> pearson_raw;
    std::optional<double> pearson_oriented;
    std::optional<double> spearman_raw;
    std::optional<double> spearman_oriented;
};

/// Protocol-specific payload. Only the fields a protocol uses are set.
struct ProtocolDetail {
    std::optional<int> best_k;
    std::optional<int> n_classes;
    std::optional<int> k_delta;                 // milligan_cooper: best_k - n_classes
    std::optional<std::size_t> best_index;
    std::optional<double> best_similarity;      // S(b)
    std::optional<double> max_similarity;       // max S
    std::optional<CorrelationMethod> method;    // vendramin
    std::optional<int> k_min;
    std::optional<int> k_max;
    std::optional<std::size_t> n_partitions;
    std::optional<CorrelationVariants> variants;
};

struct ProtocolScore {
    Protocol protocol;
    double value = 0.0;
    ProtocolDetail detail;
};

/// Index of the best value. Ties go to the smallest k, then input order.
/// Throws std::invalid_argument on an empty sequence.
std::size_t select_best(std::span<const CviValue> values, Direction direction);

/// 1 when the chosen number of clusters equals the number of classes.
ProtocolScore milligan_cooper_score(int best_k, int n_classes);

/// 1 when the chosen partition attains the maximal similarity (ties count).
ProtocolScore gurrutxaga_score(std::size_t best_index, std::span<const double> similarity);

/// Correlation between index values and similarities across partitions.
/// `value` is the raw-valued correlation by `method`; all variants are in
/// detail.variants. Throws DegenerateError when either input is constant or
/// fewer than three partitions are given.
ProtocolScore vendramin_score(std::span<const double> cvi_values, std::span<const double> similarity,
                              CorrelationMethod method = CorrelationMethod::pearson,
                              Direction direction = Direction::maximize);

CorrelationVariants correlation_variants(std::span<const double> cvi_values,
                                         std::span<const double> similarity, Direction direction);

/// S(b) / max S. Throws DegenerateError when max S <= 0.
ProtocolScore new_goodness(std::size_t best_index, std::span<const double> similarity);

struct CviCell {
    std::optional<double> value;
    std::string skip_reason;  // set when value is empty
};

struct PartitionRow {
    int k = 0;
    std::string algorithm;
    std::optional<double> ari;
    std::string ari_skip_reason;
    std::vector<CviCell> cvi;  // parallel to EvaluationReport::cvis
};

struct ProtocolOutcome {
    Protocol protocol;
    std::optional<ProtocolScore> score;
    std::string error;  // set when score is empty
};

struct CviSummary {
    CviSpec spec;
    std::optional<std::size_t> best_row;
    std::optional<double> best_value;
    std::optional<int> best_k;
    std::optional<double> best_ari;
    std::size_t skipped = 0;
    std::vector<ProtocolOutcome> protocols;

    const ProtocolOutcome* find(Protocol p) const;
};

struct Provenance {
    std::string dataset;
    std::string algorithm;
    std::size_t n = 0;
    std::size_t p = 0;
    int n_classes = 0;
    int k_min = 0;
    int k_max = 0;
    bool standardized = false;
    CorrelationMethod method = CorrelationMethod::pearson;
    CviOptions cvi_options;
};

struct EvaluationReport {
    Provenance provenance;
    std::vector<CviSpec> cvis;
    std::vector<Protocol> protocols;
    std::vector<PartitionRow> rows;
    std::vector<CviSummary> summaries;  // parallel to cvis

    const CviSummary* summary(CviKind kind) const;
    std::size_t cvi_column(CviKind kind) const;
};

struct SuiteOptions {
    std::vector<CviKind> cvis{CviKind::calinski_harabasz, CviKind::point_biserial,
                              CviKind::mean_silhouette, CviKind::davies_bouldin};
    std::vector<Protocol> protocols = all_protocols();
    CorrelationMethod method = CorrelationMethod::pearson;
    CviOptions cvi_options;
    std::string dataset_name;
};

/**
 * Runs every requested index on every partition, the ARI of every partition
 * to the dataset's labels, the per-index best partition and the requested
 * protocol scores.
 *
 * Features are used as given; standardize beforehand to evaluate on the
 * clustering input. Undefined cells are recorded with a reason and excluded
 * from that index's selection instead of aborting the run. Protocol failures
 * are recorded per index in ProtocolOutcome::error.
 */
EvaluationReport evaluate_suite(const LabeledDataset& dataset, const PartitionSet& partitions,
                                const SuiteOptions& options);

/// Same, with precomputed distances for dataset.features.
EvaluationReport evaluate_suite(const LabeledDataset& dataset, const DistanceMatrix& distances,
                                const PartitionSet& partitions, const SuiteOptions& options);

/// Vendramin correlation per index for the rows with k <= k_max, for each
/// k_max. Entries are empty where the correlation is undefined.
struct SweepPoint {
    int k_max = 0;
    std::vector<std::optional<double>> correlation;  // parallel to report.cvis
};

std::vector<SweepPoint> vendramin_sweep(const EvaluationReport& report, std::span<const int> k_max_values,
                                        CorrelationMethod method = CorrelationMethod::pearson);

/// Mean and median of new_goodness per index across datasets. Reports where
/// the score is missing for an index are left out of that index's summary.
struct GoodnessAggregate {
    CviSpec spec;
    std::size_t datasets = 0;
    std::optional<double> mean;
    std::optional<double> median;
};

std::vector<GoodnessAggregate> aggregate_new_goodness(std::span<const EvaluationReport> reports);

}  // namespace cvibench
