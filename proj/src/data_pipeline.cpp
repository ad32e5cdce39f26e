#include "arbls/data_pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "arbls/stats.hpp"

namespace arbls {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string trim(std::string s) {
  auto not_space = [](unsigned char ch) { return !std::isspace(ch); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

bool parse_double(const std::string& raw, double& out) {
  const std::string s = trim(raw);
  if (s.empty()) return false;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

bool parse_index(const std::string& s, Index& out) {
  const std::string t = trim(s);
  if (t.empty()) return false;
  long long v = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size()) return false;
  out = static_cast<Index>(v);
  return true;
}

}  // namespace

Dataset load_csv(const std::string& path, const std::string& target_column, bool has_header) {
  std::ifstream in(path);
  if (!in) throw CsvFileError("cannot open CSV file: " + path);

  std::string line;
  std::vector<std::string> header;
  if (has_header) {
    if (!std::getline(in, line)) throw CsvFileError("CSV file is empty: " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    for (auto& h : split_fields(line)) header.push_back(trim(h));
  }

  std::vector<std::vector<double>> rows;
  std::size_t n_cols = header.size();
  std::size_t data_row = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    ++data_row;
    const auto fields = split_fields(line);
    if (n_cols == 0) n_cols = fields.size();
    if (fields.size() != n_cols)
      throw CsvParseError("CSV row " + std::to_string(data_row) + ": expected " +
                          std::to_string(n_cols) + " fields, got " +
                          std::to_string(fields.size()));
    std::vector<double> row(n_cols);
    for (std::size_t j = 0; j < n_cols; ++j) {
      if (!parse_double(fields[j], row[j]))
        throw CsvParseError("CSV row " + std::to_string(data_row) + ": non-numeric cell '" +
                            trim(fields[j]) + "' in column " + std::to_string(j));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw CsvFileError("CSV file has no data rows: " + path);

  Index target_idx = -1;
  if (has_header) {
    const auto it = std::find(header.begin(), header.end(), trim(target_column));
    if (it != header.end()) target_idx = static_cast<Index>(it - header.begin());
  }
  if (target_idx < 0 && !parse_index(target_column, target_idx))
    throw CsvColumnError("target column '" + target_column + "' not found");
  if (target_idx < 0 || target_idx >= static_cast<Index>(n_cols))
    throw CsvColumnError("target column index " + std::to_string(target_idx) +
                         " out of range for " + std::to_string(n_cols) + " columns");

  Dataset ds;
  ds.name = std::filesystem::path(path).stem().string();
  const Index n = static_cast<Index>(rows.size());
  const Index t = static_cast<Index>(n_cols) - 1;
  ds.features.resize(n, t);
  ds.targets.resize(n);
  for (Index i = 0; i < n; ++i) {
    Index f = 0;
    for (Index j = 0; j < static_cast<Index>(n_cols); ++j) {
      const double v = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (j == target_idx)
        ds.targets(i) = v;
      else
        ds.features(i, f++) = v;
    }
  }
  for (Index j = 0; j < static_cast<Index>(n_cols); ++j) {
    if (j == target_idx) continue;
    ds.feature_names.push_back(has_header ? header[static_cast<std::size_t>(j)]
                                          : "x" + std::to_string(j));
  }
  return ds;
}

namespace {

double rescale(double v, const std::pair<double, double>& range) {
  const double span = range.second - range.first;
  return span > 0.0 ? (v - range.first) / span : 0.0;
}

}  // namespace

Dataset NormalizationParams::apply(const Dataset& ds) const {
  if (static_cast<std::size_t>(ds.dims()) != feature_range.size())
    throw std::invalid_argument("NormalizationParams: feature dimension mismatch");
  Dataset out = ds;
  for (Index j = 0; j < ds.dims(); ++j)
    for (Index i = 0; i < ds.rows(); ++i)
      out.features(i, j) = rescale(ds.features(i, j), feature_range[static_cast<std::size_t>(j)]);
  for (Index i = 0; i < ds.rows(); ++i) out.targets(i) = rescale(ds.targets(i), target_range);
  return out;
}

RealVector NormalizationParams::denormalize_targets(const RealVector& y) const {
  const double span = target_range.second - target_range.first;
  if (span <= 0.0) return RealVector::Constant(y.size(), target_range.first);
  return (y.array() * span + target_range.first).matrix();
}

std::pair<Dataset, NormalizationParams> normalize(const Dataset& ds) {
  if (ds.rows() < 2) throw std::invalid_argument("normalize: need at least 2 rows");
  NormalizationParams params;
  for (Index j = 0; j < ds.dims(); ++j)
    params.feature_range.emplace_back(ds.features.col(j).minCoeff(),
                                      ds.features.col(j).maxCoeff());
  params.target_range = {ds.targets.minCoeff(), ds.targets.maxCoeff()};
  return {params.apply(ds), params};
}

std::pair<Dataset, Dataset> split(const Dataset& ds, double train_fraction, std::uint64_t seed) {
  const Index n = ds.rows();
  const Index n_train = static_cast<Index>(std::floor(train_fraction * static_cast<double>(n)));
  if (n_train < 1 || n_train >= n)
    throw std::invalid_argument("split: fraction yields an empty train or test part");

  std::vector<Index> order(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::mt19937_64 rng(seed);
  for (Index i = n - 1; i > 0; --i) {
    std::uniform_int_distribution<Index> pick(0, i);
    std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(pick(rng))]);
  }

  auto take = [&](Index begin, Index count) {
    Dataset part;
    part.name = ds.name;
    part.feature_names = ds.feature_names;
    part.features.resize(count, ds.dims());
    part.targets.resize(count);
    for (Index i = 0; i < count; ++i) {
      const Index src = order[static_cast<std::size_t>(begin + i)];
      part.features.row(i) = ds.features.row(src);
      part.targets(i) = ds.targets(src);
    }
    return part;
  };
  return {take(0, n_train), take(n_train, n - n_train)};
}

double rmse(const RealVector& y_true, const RealVector& y_pred) {
  if (y_true.size() != y_pred.size() || y_true.size() == 0)
    throw std::invalid_argument("rmse: vectors must be non-empty and of equal length");
  return std::sqrt((y_true - y_pred).squaredNorm() / static_cast<double>(y_true.size()));
}

double mae(const RealVector& y_true, const RealVector& y_pred) {
  if (y_true.size() != y_pred.size() || y_true.size() == 0)
    throw std::invalid_argument("mae: vectors must be non-empty and of equal length");
  return (y_true - y_pred).cwiseAbs().sum() / static_cast<double>(y_true.size());
}

SummaryStats summarize(const Dataset& ds) {
  if (ds.rows() < 2) throw std::invalid_argument("summarize: need at least 2 rows");
  SummaryStats stats;
  const double n = static_cast<double>(ds.rows());
  for (Index j = 0; j < ds.dims(); ++j) {
    const RealVector col = ds.features.col(j);
    std::vector<double> sorted(col.data(), col.data() + col.size());
    std::sort(sorted.begin(), sorted.end());

    const double mean = col.mean();
    const RealVector d = col.array() - mean;
    const double m2 = d.squaredNorm() / n;
    const double m3 = d.array().cube().sum() / n;
    const double m4 = d.array().pow(4).sum() / n;

    double skew = 0.0;
    if (m2 > 0.0) {
      const double g1 = m3 / std::pow(m2, 1.5);
      skew = g1 * std::sqrt(n * (n - 1.0)) / (n - 2.0);
    }
    const double kurt = m2 > 0.0 ? m4 / (m2 * m2) : 0.0;

    stats.names.push_back(static_cast<std::size_t>(j) < ds.feature_names.size()
                              ? ds.feature_names[static_cast<std::size_t>(j)]
                              : "x" + std::to_string(j));
    stats.mean.push_back(mean);
    stats.stddev.push_back(std::sqrt(d.squaredNorm() / (n - 1.0)));
    stats.minimum.push_back(sorted.front());
    stats.q25.push_back(quantile_sorted(sorted, 0.25));
    stats.q50.push_back(quantile_sorted(sorted, 0.50));
    stats.q75.push_back(quantile_sorted(sorted, 0.75));
    stats.maximum.push_back(sorted.back());
    stats.skewness.push_back(skew);
    stats.kurtosis.push_back(kurt);
  }
  return stats;
}

}  // namespace arbls
