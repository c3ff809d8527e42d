#include "cvibench/cli/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <ostream>
#include <sstream>

#include <openssl/evp.h>

#include "CLI11.hpp"

#include "cvibench/cli/report_io.hpp"
#include "cvibench/cli/svg.hpp"
#include "cvibench/error.hpp"
#include "cvibench/hierclust.hpp"
#include "csv_reader.hpp"

namespace cvibench::cli {

namespace fs = std::filesystem;

namespace {

struct Prepared {
    std::string name;
    LabeledDataset dataset;
    DistanceMatrix distances;
    std::optional<Dendrogram> tree;
    std::vector<std::string> warnings;
};

Prepared prepare(const RunConfig& config, const std::string& input) {
    if (!config.expect_checksum.empty()) {
        std::string expected = config.expect_checksum;
        std::transform(expected.begin(), expected.end(), expected.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        const auto actual = sha256_file(input);
        if (actual != expected) throw DataError("checksum mismatch for " + input + ": got " + actual);
    }
    Prepared prep;
    prep.name = input;
    prep.dataset = load_csv(input, LabelColumn::parse(config.label_column), config.has_header);
    if (config.standardize) {
        auto z = standardize(prep.dataset.features);
        for (auto c : z.constant_columns)
            prep.warnings.push_back("constant column " + prep.dataset.feature_names[c] + " set to zero");
        prep.dataset.features = std::move(z.matrix);
    }
    prep.distances = euclidean_distances(prep.dataset.features);
    if (config.use_upgma) prep.tree = upgma(prep.distances);
    return prep;
}

void check_range(const RunConfig& config, std::size_t n) {
    if (config.k_min < 2 || config.k_min > config.k_max || static_cast<std::size_t>(config.k_max) > n)
        throw ConfigError("k range " + std::to_string(config.k_min) + ".." + std::to_string(config.k_max) +
                          " invalid for n=" + std::to_string(n) + " (need 2 <= kmin <= kmax <= n)");
}

PartitionSet build_partitions(const RunConfig& config, const Prepared& prep, int k_min, int k_max) {
    PartitionSet set;
    if (prep.tree) set = cut_range(*prep.tree, static_cast<std::size_t>(k_min), static_cast<std::size_t>(k_max));
    for (const auto& file : config.partition_files)
        set.add(load_partition_csv(file, prep.dataset.features.rows()),
                "external:" + fs::path(file).filename().string());
    if (set.empty()) throw ConfigError("no partitions to evaluate (UPGMA disabled and no --partitions)");
    return set;
}

SuiteOptions suite_options(const RunConfig& config, const std::string& name) {
    SuiteOptions o;
    o.cvis = config.cvis;
    o.protocols = config.protocols;
    o.method = config.method;
    o.cvi_options = config.cvi_options;
    o.dataset_name = name;
    return o;
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw DataError("cannot create output directory " + dir + ": " + ec.message());
}

std::string out_path(const RunConfig& config, const std::string& file) {
    return (fs::path(config.output_dir) / file).string();
}

struct Evaluated {
    Prepared prep;
    EvaluationReport report;
    std::vector<ExtraCorrelations> extra;
};

Evaluated evaluate_input(const RunConfig& config, const std::string& input) {
    Evaluated ev{prepare(config, input), {}, {}};
    const std::size_t n = ev.prep.dataset.features.rows();
    if (config.use_upgma) check_range(config, n);
    const auto set = build_partitions(config, ev.prep, config.k_min, config.k_max);
    ev.report = evaluate_suite(ev.prep.dataset, ev.prep.distances, set, suite_options(config, input));

    const bool wants_vendramin =
        std::find(config.protocols.begin(), config.protocols.end(), Protocol::vendramin) != config.protocols.end();
    if (wants_vendramin && ev.prep.tree) {
        std::vector<int> ks;
        for (int k : config.vendramin_kmax) {
            if (k <= config.k_min || static_cast<std::size_t>(k) > n) {
                ev.prep.warnings.push_back("vendramin range " + std::to_string(config.k_min) + ".." +
                                           std::to_string(k) + " skipped (outside k_min+1..n)");
                continue;
            }
            ks.push_back(k);
        }
        if (!ks.empty()) {
            const int widest = *std::max_element(ks.begin(), ks.end());
            SuiteOptions wide = suite_options(config, input);
            wide.protocols.clear();
            const auto wide_set = cut_range(*ev.prep.tree, static_cast<std::size_t>(config.k_min),
                                            static_cast<std::size_t>(widest));
            const auto wide_report = evaluate_suite(ev.prep.dataset, ev.prep.distances, wide_set, wide);
            for (const auto& point : vendramin_sweep(wide_report, ks, config.method))
                ev.extra.push_back({config.k_min, point.k_max, point.correlation});
        }
    }
    return ev;
}

int protocol_status(const EvaluationReport& report, std::ostream& err) {
    int status = kExitOk;
    for (const auto& s : report.summaries) {
        for (const auto& o : s.protocols) {
            if (o.score) continue;
            err << "cvibench: degenerate: " << protocol_name(o.protocol) << " uncomputable for " << s.spec.name
                << " (" << o.error << ")\n";
            status = kExitDegenerate;
        }
    }
    return status;
}

void print_warnings(const std::vector<std::string>& warnings, std::ostream& err) {
    for (const auto& w : warnings) err << "cvibench: warning: " << w << '\n';
}

}  // namespace

std::optional<PlotKind> parse_plot_kind(const std::string& name) {
    if (name == "ari_vs_k") return PlotKind::ari_vs_k;
    if (name == "cvi_vs_k") return PlotKind::cvi_vs_k;
    if (name == "correlation_vs_kmax") return PlotKind::correlation_vs_kmax;
    return std::nullopt;
}

std::string sha256_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open input file: " + path);
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256: digest init failed");
    char buf[1 << 14];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
        if (!in) break;
    }
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), digest, &len);
    std::ostringstream hex;
    for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return hex.str();
}

int cmd_evaluate(const RunConfig& config, std::ostream& err) {
    if (config.inputs.size() != 1) throw ConfigError("evaluate takes exactly one --input");
    if (config.cvis.empty()) throw ConfigError("no indices selected");
    auto ev = evaluate_input(config, config.inputs.front());
    print_warnings(ev.prep.warnings, err);

    ensure_dir(config.output_dir);
    if (config.write_csv) write_file_atomic(out_path(config, "partitions.csv"), partitions_csv(ev.report));
    if (config.protocols.empty()) return kExitOk;
    if (config.write_csv)
        write_file_atomic(out_path(config, "summary.csv"), summary_csv(ev.report, ev.extra));
    if (config.write_json)
        write_file_atomic(out_path(config, "report.json"), report_json(ev.report, ev.extra, ev.prep.warnings));
    if (config.export_dendrogram && ev.prep.tree)
        write_file_atomic(out_path(config, "dendrogram.json"), dendrogram_to_json(*ev.prep.tree));
    return protocol_status(ev.report, err);
}

int cmd_plot(const RunConfig& config, PlotKind kind, std::ostream& err) {
    if (config.inputs.size() != 1) throw ConfigError("plot takes exactly one --input");
    if (!config.use_upgma && kind == PlotKind::correlation_vs_kmax)
        throw ConfigError("correlation_vs_kmax needs UPGMA cuts");
    const auto prep = prepare(config, config.inputs.front());
    print_warnings(prep.warnings, err);
    const std::size_t n = prep.dataset.features.rows();

    SuiteOptions opts = suite_options(config, config.inputs.front());
    opts.protocols.clear();
    std::string csv;
    std::string svg;
    std::string name;

    if (kind == PlotKind::correlation_vs_kmax) {
        name = "correlation_vs_kmax";
        if (config.k_min < 2 || config.sweep_min <= config.k_min || config.sweep_min > config.sweep_max ||
            static_cast<std::size_t>(config.sweep_max) > n)
            throw ConfigError("sweep " + std::to_string(config.sweep_min) + ".." + std::to_string(config.sweep_max) +
                              " invalid: need kmin < sweep-min <= sweep-max <= n=" + std::to_string(n));
        const auto set = cut_range(*prep.tree, static_cast<std::size_t>(config.k_min),
                                   static_cast<std::size_t>(config.sweep_max));
        const auto report = evaluate_suite(prep.dataset, prep.distances, set, opts);
        std::vector<int> ks;
        for (int k = config.sweep_min; k <= config.sweep_max; ++k) ks.push_back(k);
        const auto sweep = vendramin_sweep(report, ks, config.method);

        std::vector<std::string> header{"k_max"};
        for (const auto& spec : report.cvis) header.emplace_back(spec.name);
        csv = csv_line(header);
        Panel panel{"Correlation of index with ARI (k from " + std::to_string(config.k_min) + ")", "largest k",
                    std::string(correlation_name(config.method)) + " correlation", {}};
        for (const auto& spec : report.cvis) panel.series.push_back({std::string(spec.name), {}, {}, std::nullopt});
        for (const auto& point : sweep) {
            std::vector<std::string> f{std::to_string(point.k_max)};
            for (std::size_t c = 0; c < point.correlation.size(); ++c) {
                f.push_back(format_optional(point.correlation[c]));
                if (point.correlation[c]) {
                    panel.series[c].x.push_back(point.k_max);
                    panel.series[c].y.push_back(*point.correlation[c]);
                }
            }
            csv += csv_line(f);
        }
        svg = render_svg("Index / ARI correlation vs. range of cluster numbers", {panel});
    } else {
        check_range(config, n);
        if (kind == PlotKind::ari_vs_k) opts.cvis.clear();
        const auto set = build_partitions(config, prep, config.k_min, config.k_max);
        const auto report = evaluate_suite(prep.dataset, prep.distances, set, opts);
        if (kind == PlotKind::ari_vs_k) {
            name = "ari_vs_k";
            csv = csv_line({"k", "algorithm", "ari"});
            Series s{"adjusted_rand", {}, {}, std::nullopt};
            for (const auto& row : report.rows) {
                csv += csv_line({std::to_string(row.k), row.algorithm, format_optional(row.ari)});
                if (!row.ari) continue;
                if (!s.marked || *row.ari > s.y[*s.marked]) s.marked = s.x.size();
                s.x.push_back(row.k);
                s.y.push_back(*row.ari);
            }
            svg = render_svg("Similarity to the reference classification",
                             {Panel{"adjusted Rand index", "number of clusters", "ARI", {s}}});
        } else {
            name = "cvi_vs_k";
            csv = csv_line({"cvi", "k", "algorithm", "value", "best"});
            std::vector<Panel> panels;
            for (std::size_t c = 0; c < report.cvis.size(); ++c) {
                const auto& summary = report.summaries[c];
                Series s{std::string(report.cvis[c].name), {}, {}, std::nullopt};
                for (std::size_t r = 0; r < report.rows.size(); ++r) {
                    const auto& row = report.rows[r];
                    const bool best = summary.best_row && *summary.best_row == r;
                    csv += csv_line({std::string(report.cvis[c].name), std::to_string(row.k), row.algorithm,
                                     format_optional(row.cvi[c].value), best ? "1" : "0"});
                    if (!row.cvi[c].value) continue;
                    if (best) s.marked = s.x.size();
                    s.x.push_back(row.k);
                    s.y.push_back(*row.cvi[c].value);
                }
                panels.push_back({std::string(report.cvis[c].name) +
                                      (report.cvis[c].direction == Direction::maximize ? " (max best)" : " (min best)"),
                                  "number of clusters", "index value", {s}});
            }
            svg = render_svg("Internal validity indices by number of clusters", panels);
        }
    }

    ensure_dir(config.output_dir);
    if (config.write_csv) write_file_atomic(out_path(config, name + ".csv"), csv);
    if (config.write_svg) write_file_atomic(out_path(config, name + ".svg"), svg);
    return kExitOk;
}

int cmd_aggregate(const RunConfig& config, std::ostream& err) {
    if (config.inputs.empty()) throw ConfigError("aggregate needs at least one --input");
    RunConfig per = config;
    if (std::find(per.protocols.begin(), per.protocols.end(), Protocol::new_goodness) == per.protocols.end())
        per.protocols.push_back(Protocol::new_goodness);
    std::vector<EvaluationReport> reports;
    std::string detail = csv_line({"dataset", "cvi", "best_k", "new_goodness"});
    for (const auto& input : config.inputs) {
        auto ev = evaluate_input(per, input);
        print_warnings(ev.prep.warnings, err);
        for (const auto& s : ev.report.summaries) {
            const auto* o = s.find(Protocol::new_goodness);
            detail += csv_line({input, std::string(s.spec.name), s.best_k ? std::to_string(*s.best_k) : "",
                                o && o->score ? format_double(o->score->value) : ""});
        }
        reports.push_back(std::move(ev.report));
    }
    std::string csv = csv_line({"cvi", "datasets", "mean_new_goodness", "median_new_goodness"});
    for (const auto& agg : aggregate_new_goodness(reports))
        csv += csv_line({std::string(agg.spec.name), std::to_string(agg.datasets), format_optional(agg.mean),
                         format_optional(agg.median)});
    ensure_dir(config.output_dir);
    write_file_atomic(out_path(config, "aggregate.csv"), csv);
    write_file_atomic(out_path(config, "aggregate_detail.csv"), detail);
    return kExitOk;
}

int cmd_generate_blobs(const BlobArgs& args, std::ostream&) {
    if (args.blobs.empty()) throw ConfigError("generate-blobs needs at least one --blob");
    std::vector<BlobSpec> specs;
    for (const auto& text : args.blobs) {
        const auto first = text.find(':');
        const auto second = first == std::string::npos ? std::string::npos : text.find(':', first + 1);
        if (second == std::string::npos) throw ConfigError("--blob must look like c1,c2,...:sd:count, got " + text);
        BlobSpec b;
        std::stringstream centers(text.substr(0, first));
        for (std::string tok; std::getline(centers, tok, ',');) {
            const auto v = detail::parse_double(tok);
            if (!v) throw ConfigError("bad blob center coordinate '" + tok + "'");
            b.center.push_back(*v);
        }
        const auto sd = detail::parse_double(text.substr(first + 1, second - first - 1));
        const auto count = detail::parse_integer(text.substr(second + 1));
        if (!sd || !count || *count < 1) throw ConfigError("bad blob sd/count in " + text);
        b.sd = *sd;
        b.count = static_cast<std::size_t>(*count);
        specs.push_back(std::move(b));
    }
    const auto ds = generate_blobs(specs, args.seed);
    std::vector<std::string> header = ds.feature_names;
    header.emplace_back("label");
    std::string csv = csv_line(header);
    for (std::size_t i = 0; i < ds.features.rows(); ++i) {
        std::vector<std::string> f;
        for (double v : ds.features.row(i)) f.push_back(format_double(v));
        f.push_back(std::to_string(ds.labels[i]));
        csv += csv_line(f);
    }
    if (args.output.empty()) throw ConfigError("generate-blobs needs --output");
    const auto parent = fs::path(args.output).parent_path();
    if (!parent.empty()) ensure_dir(parent.string());
    write_file_atomic(args.output, csv);
    return kExitOk;
}

namespace {

void add_run_options(CLI::App& cmd, RunConfig& cfg, std::vector<std::string>& cvi_names,
                     std::vector<std::string>& protocol_names, std::string& method, std::string& singleton,
                     std::string& dispersion, std::vector<std::string>& formats, bool multi_input) {
    auto* in = cmd.add_option("-i,--input", cfg.inputs, "Input CSV file")->required();
    if (!multi_input) in->expected(1);
    cmd.add_option("--label-col", cfg.label_column, "Label column: header name or 0-based index")
        ->capture_default_str();
    cmd.add_flag("--no-header{false}", cfg.has_header, "Input has no header row");
    cmd.add_flag("--no-standardize{false}", cfg.standardize, "Use raw features");
    cmd.add_option("--kmin", cfg.k_min, "Smallest number of clusters")->capture_default_str();
    cmd.add_option("--kmax", cfg.k_max, "Largest number of clusters")->capture_default_str();
    cmd.add_option("--cvis", cvi_names, "Indices (comma list) or 'all'")->delimiter(',');
    cmd.add_option("--protocols", protocol_names, "Protocols (comma list), 'all' or 'none'")->delimiter(',');
    cmd.add_option("--correlation", method, "Vendramin correlation: pearson|spearman")->capture_default_str();
    cmd.add_option("--silhouette-singleton", singleton, "Singleton silhouette width: one|zero")
        ->capture_default_str();
    cmd.add_option("--db-dispersion", dispersion, "Davies-Bouldin scatter: rms|mean")->capture_default_str();
    cmd.add_option("--vendramin-kmax", cfg.vendramin_kmax, "Extra Vendramin ranges kmin..K")
        ->delimiter(',')
        ->capture_default_str();
    cmd.add_option("--partitions", cfg.partition_files, "External partition CSV (object_id,cluster)");
    cmd.add_flag("--no-upgma{false}", cfg.use_upgma, "Evaluate only --partitions files");
    cmd.add_option("--expect-checksum", cfg.expect_checksum, "Required SHA-256 of the input file");
    cmd.add_flag("--dendrogram-json", cfg.export_dendrogram, "Also write dendrogram.json");
    cmd.add_option("-o,--output-dir", cfg.output_dir, "Output directory")->capture_default_str();
    cmd.add_option("--format", formats, "Output formats: csv,json,svg")->delimiter(',');
}

void resolve(RunConfig& cfg, const std::vector<std::string>& cvi_names,
             const std::vector<std::string>& protocol_names, const std::string& method,
             const std::string& singleton, const std::string& dispersion,
             const std::vector<std::string>& formats) {
    if (!cvi_names.empty() && !(cvi_names.size() == 1 && cvi_names[0] == "all")) {
        cfg.cvis.clear();
        for (const auto& name : cvi_names) {
            const auto kind = parse_cvi(name);
            if (!kind) throw ConfigError("unknown index '" + name + "'");
            if (std::find(cfg.cvis.begin(), cfg.cvis.end(), *kind) == cfg.cvis.end()) cfg.cvis.push_back(*kind);
        }
    }
    if (!protocol_names.empty() && !(protocol_names.size() == 1 && protocol_names[0] == "all")) {
        cfg.protocols.clear();
        if (!(protocol_names.size() == 1 && protocol_names[0] == "none")) {
            for (const auto& name : protocol_names) {
                const auto p = parse_protocol(name);
                if (!p) throw ConfigError("unknown protocol '" + name + "'");
                if (std::find(cfg.protocols.begin(), cfg.protocols.end(), *p) == cfg.protocols.end())
                    cfg.protocols.push_back(*p);
            }
        }
    }
    const auto m = parse_correlation(method);
    if (!m) throw ConfigError("unknown correlation method '" + method + "'");
    cfg.method = *m;
    if (singleton == "one") {
        cfg.cvi_options.silhouette_singleton = SingletonSilhouette::one;
    } else if (singleton == "zero") {
        cfg.cvi_options.silhouette_singleton = SingletonSilhouette::zero;
    } else {
        throw ConfigError("--silhouette-singleton must be one or zero");
    }
    if (dispersion == "rms") {
        cfg.cvi_options.db_dispersion = DbDispersion::rms;
    } else if (dispersion == "mean") {
        cfg.cvi_options.db_dispersion = DbDispersion::mean;
    } else {
        throw ConfigError("--db-dispersion must be rms or mean");
    }
    if (!formats.empty()) {
        cfg.write_csv = cfg.write_json = cfg.write_svg = false;
        for (const auto& f : formats) {
            if (f == "csv") cfg.write_csv = true;
            else if (f == "json") cfg.write_json = true;
            else if (f == "svg") cfg.write_svg = true;
            else throw ConfigError("unknown format '" + f + "'");
        }
    }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Evaluate internal cluster validity indices against reference classifications"};
    app.name("cvibench");
    app.require_subcommand(1);

    RunConfig cfg;
    std::vector<std::string> cvi_names;
    std::vector<std::string> protocol_names;
    std::string method = "pearson";
    std::string singleton = "one";
    std::string dispersion = "rms";
    std::vector<std::string> formats;

    auto* evaluate = app.add_subcommand("evaluate", "Run the evaluation pipeline and write reports");
    add_run_options(*evaluate, cfg, cvi_names, protocol_names, method, singleton, dispersion, formats, false);

    auto* plot = app.add_subcommand("plot", "Write plot data (CSV) and charts (SVG)");
    std::string plot_kind;
    plot->add_option("kind", plot_kind, "ari_vs_k | cvi_vs_k | correlation_vs_kmax")->required();
    add_run_options(*plot, cfg, cvi_names, protocol_names, method, singleton, dispersion, formats, false);
    plot->add_option("--sweep-min", cfg.sweep_min, "Smallest k_max in the correlation sweep")->capture_default_str();
    plot->add_option("--sweep-max", cfg.sweep_max, "Largest k_max in the correlation sweep")->capture_default_str();

    auto* aggregate = app.add_subcommand("aggregate", "Mean/median new-approach goodness over several datasets");
    add_run_options(*aggregate, cfg, cvi_names, protocol_names, method, singleton, dispersion, formats, true);

    BlobArgs blobs;
    auto* generate = app.add_subcommand("generate-blobs", "Write a seeded synthetic labelled dataset");
    generate->add_option("--blob", blobs.blobs, "c1,c2,...:sd:count (repeatable)")->required();
    generate->add_option("--seed", blobs.seed, "Generator seed")->capture_default_str();
    generate->add_option("--output", blobs.output, "Output CSV path")->required();

    try {
        try {
            app.parse(argc, argv);
        } catch (const CLI::CallForHelp& e) {
            return app.exit(e, out, err);
        } catch (const CLI::CallForAllHelp& e) {
            return app.exit(e, out, err);
        } catch (const CLI::ParseError& e) {
            throw ConfigError(e.what());
        }
        if (*generate) return cmd_generate_blobs(blobs, err);
        resolve(cfg, cvi_names, protocol_names, method, singleton, dispersion, formats);
        if (*evaluate) return cmd_evaluate(cfg, err);
        if (*aggregate) return cmd_aggregate(cfg, err);
        const auto kind = parse_plot_kind(plot_kind);
        if (!kind) throw ConfigError("unknown plot kind '" + plot_kind + "'");
        return cmd_plot(cfg, *kind, err);
    } catch (const ConfigError& e) {
        err << "cvibench: config: " << e.what() << '\n';
        return kExitConfig;
    } catch (const DataError& e) {
        err << "cvibench: data: " << e.what() << '\n';
        return kExitData;
    } catch (const DegenerateError& e) {
        err << "cvibench: degenerate: " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const std::exception& e) {
        err << "cvibench: internal: " << e.what() << '\n';
        return kExitInternal;
    }
}

}  // namespace cvibench::cli
