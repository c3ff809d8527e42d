#pragma once

#include <span>
#include <vector>

namespace cvibench {

/// Pearson product-moment correlation. Throws DegenerateError when either
/// input has zero variance or the lengths differ or are below 2.
double pearson(std::span<const double> x, std::span<const double> y);

/// Pearson correlation of average ranks (ties share the mean rank).
double spearman(std::span<const double> x, std::span<const double> y);

/// 1-based ranks, ties averaged.
std::vector<double> average_ranks(std::span<const double> x);

double mean(std::span<const double> x);
double median(std::vector<double> x);

}  // namespace cvibench
