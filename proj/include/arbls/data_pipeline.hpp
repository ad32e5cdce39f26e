#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "arbls/types.hpp"

namespace arbls {

struct Dataset {
  RealMatrix features;  // N x t
  RealVector targets;   // N
  std::vector<std::string> feature_names;
  std::string name;

  Index rows() const { return features.rows(); }
  Index dims() const { return features.cols(); }
};

/// Distinct ingestion failure kinds.
struct CsvFileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CsvParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CsvColumnError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses a numeric CSV (comma-separated, '.' decimal point, optional header
/// line). `target_column` is a header name, or a 0-based column index when it
/// parses as an integer (the only form accepted without a header). Rows with
/// unparseable cells raise CsvParseError naming the row.
Dataset load_csv(const std::string& path, const std::string& target_column, bool has_header);

/// Column-wise min-max parameters for features and target; constant columns
/// are flagged and map to 0.
struct NormalizationParams {
  std::vector<std::pair<double, double>> feature_range;  // (min, max) per column
  std::pair<double, double> target_range{0.0, 0.0};

  Dataset apply(const Dataset& ds) const;
  RealVector denormalize_targets(const RealVector& y_normalized) const;
};

/// Maps every column (features and target) onto [0, 1].
std::pair<Dataset, NormalizationParams> normalize(const Dataset& ds);

/// Seeded uniform shuffle followed by a contiguous split; the train part gets
/// floor(N * train_fraction) rows. Throws when either part would be empty.
std::pair<Dataset, Dataset> split(const Dataset& ds, double train_fraction, std::uint64_t seed);

double rmse(const RealVector& y_true, const RealVector& y_pred);
double mae(const RealVector& y_true, const RealVector& y_pred);

/// Per-feature descriptive statistics. Skewness is the adjusted
/// Fisher-Pearson sample coefficient; kurtosis is non-excess (normal = 3).
struct SummaryStats {
  std::vector<std::string> names;
  std::vector<double> mean, stddev, minimum, q25, q50, q75, maximum, skewness, kurtosis;
};

SummaryStats summarize(const Dataset& ds);

}  // namespace arbls
