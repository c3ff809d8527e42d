#include "cvibench/cli/report_io.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <system_error>

#include "json.hpp"

#include "cvibench/error.hpp"

namespace cvibench::cli {

using nlohmann::ordered_json;

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
    return {buf, ptr};
}

std::string format_optional(const std::optional<double>& v) { return v ? format_double(*v) : std::string{}; }

std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_line(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_field(fields[i]);
    }
    out += '\n';
    return out;
}

std::string partitions_csv(const EvaluationReport& report) {
    std::vector<std::string> header{"k", "algorithm", "ari"};
    for (const auto& spec : report.cvis) header.emplace_back(spec.name);
    std::string out = csv_line(header);
    for (const auto& row : report.rows) {
        std::vector<std::string> f{std::to_string(row.k), row.algorithm, format_optional(row.ari)};
        for (const auto& cell : row.cvi) f.push_back(format_optional(cell.value));
        out += csv_line(f);
    }
    return out;
}

namespace {

std::optional<double> score_of(const CviSummary& s, Protocol p) {
    const auto* o = s.find(p);
    if (!o || !o->score) return std::nullopt;
    return o->score->value;
}

std::string range_name(int lo, int hi) { return "vendramin_" + std::to_string(lo) + "_" + std::to_string(hi); }

ordered_json opt_json(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

template <typename T>
void put(ordered_json& j, const char* key, const std::optional<T>& v) {
    if (v) j[key] = *v;
}

ordered_json detail_json(const ProtocolDetail& d) {
    ordered_json j = ordered_json::object();
    put(j, "best_k", d.best_k);
    put(j, "n_classes", d.n_classes);
    put(j, "k_delta", d.k_delta);
    put(j, "best_index", d.best_index);
    put(j, "best_similarity", d.best_similarity);
    put(j, "max_similarity", d.max_similarity);
    if (d.method) j["method"] = correlation_name(*d.method);
    put(j, "k_min", d.k_min);
    put(j, "k_max", d.k_max);
    put(j, "n_partitions", d.n_partitions);
    if (d.variants) {
        j["variants"] = {{"pearson_raw", opt_json(d.variants->pearson_raw)},
                         {"pearson_oriented", opt_json(d.variants->pearson_oriented)},
                         {"spearman_raw", opt_json(d.variants->spearman_raw)},
                         {"spearman_oriented", opt_json(d.variants->spearman_oriented)}};
    }
    return j;
}

}  // namespace

std::string summary_csv(const EvaluationReport& report, const std::vector<ExtraCorrelations>& extra) {
    const auto& prov = report.provenance;
    std::vector<std::string> header{"cvi", "direction", "best_value", "best_k", "ari_at_best",
                                    "milligan_cooper", "gurrutxaga", range_name(prov.k_min, prov.k_max)};
    for (const auto& e : extra) header.push_back(range_name(e.k_min, e.k_max));
    header.insert(header.end(), {"new_goodness", "k_delta", "skipped"});
    std::string out = csv_line(header);

    for (std::size_t c = 0; c < report.summaries.size(); ++c) {
        const auto& s = report.summaries[c];
        std::vector<std::string> f{std::string(s.spec.name),
                                   s.spec.direction == Direction::maximize ? "max" : "min",
                                   format_optional(s.best_value),
                                   s.best_k ? std::to_string(*s.best_k) : "",
                                   format_optional(s.best_ari),
                                   format_optional(score_of(s, Protocol::milligan_cooper)),
                                   format_optional(score_of(s, Protocol::gurrutxaga)),
                                   format_optional(score_of(s, Protocol::vendramin))};
        for (const auto& e : extra) f.push_back(format_optional(e.values[c]));
        f.push_back(format_optional(score_of(s, Protocol::new_goodness)));
        const auto* mc = s.find(Protocol::milligan_cooper);
        f.push_back(mc && mc->score && mc->score->detail.k_delta ? std::to_string(*mc->score->detail.k_delta) : "");
        f.push_back(std::to_string(s.skipped));
        out += csv_line(f);
    }
    return out;
}

std::string report_json(const EvaluationReport& report, const std::vector<ExtraCorrelations>& extra,
                        const std::vector<std::string>& warnings) {
    const auto& prov = report.provenance;
    ordered_json j;
    j["provenance"] = {
        {"dataset", prov.dataset},
        {"algorithm", prov.algorithm},
        {"n", prov.n},
        {"p", prov.p},
        {"n_classes", prov.n_classes},
        {"k_min", prov.k_min},
        {"k_max", prov.k_max},
        {"standardized", prov.standardized},
        {"correlation_method", correlation_name(prov.method)},
        {"silhouette_singleton",
         prov.cvi_options.silhouette_singleton == SingletonSilhouette::one ? "one" : "zero"},
        {"db_dispersion", prov.cvi_options.db_dispersion == DbDispersion::rms ? "rms" : "mean"},
    };
    j["warnings"] = warnings;

    auto& cvis = j["cvis"] = ordered_json::array();
    for (const auto& spec : report.cvis)
        cvis.push_back({{"name", spec.name}, {"direction", spec.direction == Direction::maximize ? "max" : "min"}});
    auto& protocols = j["protocols"] = ordered_json::array();
    for (auto p : report.protocols) protocols.push_back(protocol_name(p));

    auto& rows = j["partitions"] = ordered_json::array();
    for (const auto& row : report.rows) {
        ordered_json r;
        r["k"] = row.k;
        r["algorithm"] = row.algorithm;
        r["ari"] = opt_json(row.ari);
        if (!row.ari) r["ari_skip_reason"] = row.ari_skip_reason;
        ordered_json values = ordered_json::object();
        ordered_json skipped = ordered_json::object();
        for (std::size_t c = 0; c < row.cvi.size(); ++c) {
            const std::string name(report.cvis[c].name);
            values[name] = opt_json(row.cvi[c].value);
            if (!row.cvi[c].value) skipped[name] = row.cvi[c].skip_reason;
        }
        r["cvi"] = std::move(values);
        if (!skipped.empty()) r["skipped"] = std::move(skipped);
        rows.push_back(std::move(r));
    }

    auto& summaries = j["summary"] = ordered_json::array();
    for (std::size_t c = 0; c < report.summaries.size(); ++c) {
        const auto& s = report.summaries[c];
        ordered_json o;
        o["cvi"] = s.spec.name;
        o["best_value"] = opt_json(s.best_value);
        o["best_k"] = s.best_k ? ordered_json(*s.best_k) : ordered_json(nullptr);
        o["best_partition"] = s.best_row ? ordered_json(*s.best_row) : ordered_json(nullptr);
        o["ari_at_best"] = opt_json(s.best_ari);
        o["skipped"] = s.skipped;
        ordered_json scores = ordered_json::object();
        for (const auto& outcome : s.protocols) {
            ordered_json p;
            if (outcome.score) {
                p["value"] = outcome.score->value;
                p["detail"] = detail_json(outcome.score->detail);
            } else {
                p["value"] = nullptr;
                p["error"] = outcome.error;
            }
            scores[std::string(protocol_name(outcome.protocol))] = std::move(p);
        }
        o["scores"] = std::move(scores);
        ordered_json ex = ordered_json::array();
        for (const auto& e : extra)
            ex.push_back({{"k_min", e.k_min}, {"k_max", e.k_max}, {"value", opt_json(e.values[c])}});
        o["vendramin_extra"] = std::move(ex);
        summaries.push_back(std::move(o));
    }
    return j.dump(2) + "\n";
}

void write_file_atomic(const std::string& path, std::string_view contents) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot write " + tmp.string());
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) throw DataError("write failed: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) throw DataError("cannot rename " + tmp.string() + " to " + path + ": " + ec.message());
}

}  // namespace cvibench::cli
