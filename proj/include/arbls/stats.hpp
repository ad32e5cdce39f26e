#pragma once

#include "arbls/types.hpp"

namespace arbls {

/// Median of a vector (average of the two middle order statistics for even n).
double median(const RealVector& v);

/// Median absolute deviation about the median: med(|v - med(v)|).
double mad(const RealVector& v);

/// Quantile by linear interpolation between order statistics (the common
/// spreadsheet/statistics default). `sorted` must be ascending, p in [0,1].
double quantile_sorted(const std::vector<double>& sorted, double p);

}  // namespace arbls
