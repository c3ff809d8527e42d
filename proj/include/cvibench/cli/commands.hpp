#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cvibench/evaluate.hpp"
#include "cvibench/internal_cvi.hpp"

namespace cvibench::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitInternal = 1,
    kExitConfig = 2,
    kExitData = 3,
    kExitDegenerate = 4,
};

struct RunConfig {
    std::vector<std::string> inputs;
    std::string label_column = "0";
    bool has_header = true;
    bool standardize = true;
    int k_min = 2;
    int k_max = 15;
    std::vector<CviKind> cvis{CviKind::calinski_harabasz, CviKind::point_biserial, CviKind::mean_silhouette,
                              CviKind::davies_bouldin};
    std::vector<Protocol> protocols = all_protocols();
    CorrelationMethod method = CorrelationMethod::pearson;
    CviOptions cvi_options;
    std::string output_dir = "out";
    bool write_csv = true;
    bool write_json = true;
    bool write_svg = true;
    std::uint64_t seed = 1;

    /// Extra Vendramin columns over k_min..K on UPGMA cuts; K > n is skipped.
    std::vector<int> vendramin_kmax{100};
    /// Externally produced partitions (object_id,cluster CSV).
    std::vector<std::string> partition_files;
    bool use_upgma = true;
    std::string expect_checksum;
    bool export_dendrogram = false;

    /// correlation_vs_kmax sweep bounds.
    int sweep_min = 10;
    int sweep_max = 100;
};

enum class PlotKind { ari_vs_k, cvi_vs_k, correlation_vs_kmax };

std::optional<PlotKind> parse_plot_kind(const std::string& name);

// Commands throw ConfigError / DataError / DegenerateError; run() maps them
// to exit codes.

/// Writes report.json, partitions.csv and summary.csv (only partitions.csv
/// when no protocol is requested). Returns kExitDegenerate when a requested
/// protocol could not be computed for some index, after writing outputs.
int cmd_evaluate(const RunConfig& config, std::ostream& err);

/// Writes <kind>.csv and <kind>.svg.
int cmd_plot(const RunConfig& config, PlotKind kind, std::ostream& err);

/// Runs evaluate on every input and writes aggregate.csv with the mean and
/// median new-approach goodness per index.
int cmd_aggregate(const RunConfig& config, std::ostream& err);

struct BlobArgs {
    std::vector<std::string> blobs;  // "c1,c2,...:sd:count"
    std::string output;
    std::uint64_t seed = 1;
};

int cmd_generate_blobs(const BlobArgs& args, std::ostream& err);

/// Hex SHA-256 of a file's bytes.
std::string sha256_file(const std::string& path);

/// Full command line entry point.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cvibench::cli
