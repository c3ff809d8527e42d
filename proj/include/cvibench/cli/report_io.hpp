#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cvibench/evaluate.hpp"

namespace cvibench::cli {

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

/// Empty string for a missing value.
std::string format_optional(const std::optional<double>& v);

/// RFC 4180 quoting: fields containing comma, quote, CR or LF are quoted.
std::string csv_field(std::string_view s);
std::string csv_line(const std::vector<std::string>& fields);

/// Extra Vendramin correlations over wider k ranges (the summary's
/// additional columns), one entry per k_max.
struct ExtraCorrelations {
    int k_min = 0;
    int k_max = 0;
    std::vector<std::optional<double>> values;  // parallel to report.cvis
};

/// Header: k,algorithm,ari,<index names...>
std::string partitions_csv(const EvaluationReport& report);

/// One row per index, columns in the order of the published comparison
/// table: cvi,direction,best_value,best_k,ari_at_best,milligan_cooper,
/// gurrutxaga,vendramin_<kmin>_<kmax>[,vendramin_<kmin>_<K>...],
/// new_goodness,k_delta,skipped.
std::string summary_csv(const EvaluationReport& report, const std::vector<ExtraCorrelations>& extra);

/// Full report as JSON with a fixed key order.
std::string report_json(const EvaluationReport& report, const std::vector<ExtraCorrelations>& extra,
                        const std::vector<std::string>& warnings);

/// Writes through a temporary file in the same directory, then renames.
void write_file_atomic(const std::string& path, std::string_view contents);

}  // namespace cvibench::cli
