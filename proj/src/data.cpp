#include "cvibench/data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <unordered_map>

#include "cvibench/error.hpp"
#include "cvibench/simd/kernels.hpp"
#include "csv_reader.hpp"

namespace cvibench {

DataMatrix::DataMatrix(std::size_t rows, std::size_t cols, std::vector<double> values,
                       bool standardized)
    : rows_(rows), cols_(cols), values_(std::move(values)), standardized_(standardized) {
    if (values_.size() != rows_ * cols_)
        throw std::invalid_argument("DataMatrix: value count does not match shape");
    for (double v : values_)
        if (!std::isfinite(v)) throw DataError("DataMatrix: non-finite value");
}

std::vector<double> DataMatrix::column(std::size_t c) const {
    std::vector<double> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
}

DistanceMatrix::DistanceMatrix(std::size_t n, std::vector<double> condensed)
    : n_(n), d_(std::move(condensed)) {
    if (n_ < 2) throw std::invalid_argument("DistanceMatrix: need at least two objects");
    if (d_.size() != n_ * (n_ - 1) / 2)
        throw std::invalid_argument("DistanceMatrix: condensed length must be n(n-1)/2");
    for (double v : d_)
        if (!std::isfinite(v) || v < 0.0)
            throw std::invalid_argument("DistanceMatrix: entries must be finite and >= 0");
}

LabelColumn LabelColumn::parse(const std::string& spec) {
    if (!spec.empty() && std::all_of(spec.begin(), spec.end(), [](char c) { return c >= '0' && c <= '9'; }))
        return at(static_cast<std::size_t>(std::stoull(spec)));
    return named(spec);
}

LabeledDataset parse_csv(const std::string& text, const LabelColumn& label, bool has_header,
                         const std::string& source) {
    auto records = detail::parse_csv_records(text);
    if (records.empty()) throw DataError(source + ": empty file");

    std::vector<std::string> header;
    if (has_header) {
        header = std::move(records.front().fields);
        records.erase(records.begin());
    }
    const std::size_t width = has_header ? header.size() : records.empty() ? 0 : records.front().fields.size();

    std::size_t label_idx = 0;
    if (label.by_name) {
        const auto it = std::find(header.begin(), header.end(), label.name);
        if (!has_header || it == header.end())
            throw DataError(source + ": label column '" + label.name + "' not found");
        label_idx = static_cast<std::size_t>(it - header.begin());
    } else {
        label_idx = label.index;
        if (label_idx >= width)
            throw DataError(source + ": label column index " + std::to_string(label_idx) +
                            " out of range (" + std::to_string(width) + " columns)");
    }
    if (width < 2) throw DataError(source + ": need a label column and at least one feature");
    if (records.size() < 2) throw DataError(source + ": need at least 2 data rows");

    const std::size_t p = width - 1;
    std::vector<double> values;
    values.reserve(records.size() * p);
    std::vector<long long> class_ids;
    std::vector<std::string> class_names;
    std::unordered_map<std::string, long long> class_index;

    for (std::size_t r = 0; r < records.size(); ++r) {
        const auto& rec = records[r];
        const std::size_t data_row = r + 1;
        if (rec.fields.size() != width)
            throw DataError(source + ": row " + std::to_string(data_row) + " (line " +
                            std::to_string(rec.line) + ") has " + std::to_string(rec.fields.size()) +
                            " fields, expected " + std::to_string(width));
        for (std::size_t c = 0; c < width; ++c) {
            if (c == label_idx) continue;
            const auto v = detail::parse_double(rec.fields[c]);
            if (!v || !std::isfinite(*v)) {
                const std::string col = has_header ? " '" + header[c] + "'" : "";
                throw DataError(source + ": cannot parse number at row " + std::to_string(data_row) +
                                ", column " + std::to_string(c) + col + ": '" + rec.fields[c] + "'");
            }
            values.push_back(*v);
        }
        const auto& token = rec.fields[label_idx];
        auto [it, fresh] = class_index.try_emplace(token, static_cast<long long>(class_names.size()));
        if (fresh) class_names.push_back(token);
        class_ids.push_back(it->second);
    }

    LabeledDataset ds;
    ds.features = DataMatrix(records.size(), p, std::move(values));
    ds.labels = Partition::from_ids(class_ids);
    ds.class_names = std::move(class_names);
    for (std::size_t c = 0; c < width; ++c) {
        if (c == label_idx) continue;
        ds.feature_names.push_back(has_header ? header[c] : "V" + std::to_string(c));
    }
    return ds;
}

LabeledDataset load_csv(const std::string& path, const LabelColumn& label, bool has_header) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open input file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str(), label, has_header, path);
}

Standardized standardize(const DataMatrix& m) {
    const std::size_t n = m.rows();
    const std::size_t p = m.cols();
    if (n < 2) throw std::invalid_argument("standardize: need at least two rows");
    std::vector<double> out(n * p);
    Standardized result;
    for (std::size_t c = 0; c < p; ++c) {
        double mean = 0.0;
        for (std::size_t r = 0; r < n; ++r) mean += m(r, c);
        mean /= static_cast<double>(n);
        double ss = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            const double dev = m(r, c) - mean;
            ss += dev * dev;
        }
        const double sd = std::sqrt(ss / static_cast<double>(n - 1));
        // Treat spread at rounding level of the mean as constant.
        if (!(sd > 1e-13 * std::max(1.0, std::abs(mean)))) {
            result.constant_columns.push_back(c);
            for (std::size_t r = 0; r < n; ++r) out[r * p + c] = 0.0;
            continue;
        }
        for (std::size_t r = 0; r < n; ++r) out[r * p + c] = (m(r, c) - mean) / sd;
    }
    result.matrix = DataMatrix(n, p, std::move(out), true);
    return result;
}

DistanceMatrix euclidean_distances(const DataMatrix& m) {
    const std::size_t n = m.rows();
    if (n < 2) throw std::invalid_argument("euclidean_distances: need at least two rows");
    std::vector<double> d;
    d.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const auto ri = m.row(i);
        for (std::size_t j = i + 1; j < n; ++j) d.push_back(std::sqrt(simd::squared_distance(ri, m.row(j))));
    }
    return DistanceMatrix(n, std::move(d));
}

namespace {

class BoxMuller {
public:
    explicit BoxMuller(std::uint64_t seed) : engine_(seed) {}

    double next() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        // 53-bit uniforms; u1 in (0, 1] keeps the log finite.
        const double u1 = 1.0 - static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace

LabeledDataset generate_blobs(std::span<const BlobSpec> blobs, std::uint64_t seed) {
    if (blobs.empty()) throw ConfigError("generate_blobs: empty blob list");
    const std::size_t p = blobs.front().center.size();
    if (p == 0) throw ConfigError("generate_blobs: centers must have at least one coordinate");
    std::size_t total = 0;
    for (const auto& b : blobs) {
        if (b.center.size() != p) throw ConfigError("generate_blobs: centers differ in dimension");
        if (b.count < 1) throw ConfigError("generate_blobs: every blob needs count >= 1");
        if (!(b.sd >= 0.0) || !std::isfinite(b.sd)) throw ConfigError("generate_blobs: sd must be >= 0");
        total += b.count;
    }
    if (total < 2) throw ConfigError("generate_blobs: need at least two points in total");

    BoxMuller normal(seed);
    std::vector<double> values;
    values.reserve(total * p);
    std::vector<long long> ids;
    ids.reserve(total);
    LabeledDataset ds;
    for (std::size_t b = 0; b < blobs.size(); ++b) {
        for (std::size_t i = 0; i < blobs[b].count; ++i) {
            for (std::size_t c = 0; c < p; ++c) values.push_back(blobs[b].center[c] + blobs[b].sd * normal.next());
            ids.push_back(static_cast<long long>(b));
        }
        ds.class_names.push_back(std::to_string(b + 1));
    }
    ds.features = DataMatrix(total, p, std::move(values));
    ds.labels = Partition::from_ids(ids);
    for (std::size_t c = 0; c < p; ++c) ds.feature_names.push_back("x" + std::to_string(c + 1));
    return ds;
}

}  // namespace cvibench
