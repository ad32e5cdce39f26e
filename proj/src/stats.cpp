#include "arbls/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace arbls {

double median(const RealVector& v) {
  if (v.size() == 0) throw std::invalid_argument("median: empty vector");
  std::vector<double> w(v.data(), v.data() + v.size());
  const std::size_t mid = w.size() / 2;
  std::nth_element(w.begin(), w.begin() + mid, w.end());
  double hi = w[mid];
  if (w.size() % 2 == 1) return hi;
  double lo = *std::max_element(w.begin(), w.begin() + mid);
  return 0.5 * (lo + hi);
}

double mad(const RealVector& v) {
  const double m = median(v);
  return median((v.array() - m).abs().matrix());
}

double quantile_sorted(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) throw std::invalid_argument("quantile_sorted: empty vector");
  if (sorted.size() == 1) return sorted[0];
  const double h = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace arbls
