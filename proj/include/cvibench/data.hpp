#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cvibench/partition.hpp"

namespace cvibench {

/// Row-major n x p matrix of finite reals. Rows are objects.
class DataMatrix {
public:
    DataMatrix() = default;
    DataMatrix(std::size_t rows, std::size_t cols, std::vector<double> values,
               bool standardized = false);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool standardized() const noexcept { return standardized_; }

    double operator()(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }
    std::span<const double> row(std::size_t r) const {
        return {values_.data() + r * cols_, cols_};
    }
    std::span<const double> values() const noexcept { return values_; }
    std::vector<double> column(std::size_t c) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> values_;
    bool standardized_ = false;
};

/**
 * Condensed pairwise distances for n objects.
 *
 * Pairs (i, j) with i < j (0-based) are stored row by row, the same order
 * as scipy's pdist: (0,1), (0,2), ..., (0,n-1), (1,2), ...
 * index(i, j) = n*i - i*(i+1)/2 + (j - i - 1).
 */
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    DistanceMatrix(std::size_t n, std::vector<double> condensed);

    std::size_t size() const noexcept { return n_; }
    std::span<const double> condensed() const noexcept { return d_; }

    static std::size_t index(std::size_t n, std::size_t i, std::size_t j) noexcept {
        return n * i - i * (i + 1) / 2 + (j - i - 1);
    }

    /// Symmetric accessor; returns 0 on the diagonal.
    double operator()(std::size_t i, std::size_t j) const {
        if (i == j) return 0.0;
        if (i > j) std::swap(i, j);
        return d_[index(n_, i, j)];
    }

private:
    std::size_t n_ = 0;
    std::vector<double> d_;
};

struct LabeledDataset {
    DataMatrix features;
    Partition labels;
    std::vector<std::string> feature_names;
    /// Original label token for class c at index c-1.
    std::vector<std::string> class_names;
};

/// Selects the label column either by header name or by 0-based index.
struct LabelColumn {
    std::string name;
    std::size_t index = 0;
    bool by_name = false;

    static LabelColumn named(std::string n) { return {std::move(n), 0, true}; }
    static LabelColumn at(std::size_t i) { return {{}, i, false}; }
    /// "3" resolves to an index, anything else to a name.
    static LabelColumn parse(const std::string& spec);
};

/// Throws DataError on a missing file, an unparseable cell (with 1-based
/// row and column), an absent label column, or fewer than two rows.
LabeledDataset load_csv(const std::string& path, const LabelColumn& label, bool has_header);

/// Same as load_csv but from in-memory text. `source` names it in errors.
LabeledDataset parse_csv(const std::string& text, const LabelColumn& label, bool has_header,
                         const std::string& source = "<memory>");

struct Standardized {
    DataMatrix matrix;
    /// Columns with zero sample variance; mapped to all zeros.
    std::vector<std::size_t> constant_columns;
};

/// Column-wise z-scores with the sample (n-1) standard deviation.
Standardized standardize(const DataMatrix& m);

DistanceMatrix euclidean_distances(const DataMatrix& m);

struct BlobSpec {
    std::vector<double> center;
    double sd = 0.0;
    std::size_t count = 0;
};

/**
 * Isotropic Gaussian blobs, labels = blob index (1-based).
 *
 * Draws come from std::mt19937_64 (output sequence fixed by the C++
 * standard) turned into normals with the Box-Muller transform, so a given
 * seed gives the same dataset on every conforming platform. Points are
 * generated blob by blob, coordinate by coordinate.
 */
LabeledDataset generate_blobs(std::span<const BlobSpec> blobs, std::uint64_t seed);

}  // namespace cvibench
