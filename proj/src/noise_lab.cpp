#include "arbls/noise_lab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace arbls {

void OutlierSpec::validate() const {
  if (!(proportion >= 0.0 && proportion <= 1.0))
    throw std::invalid_argument("OutlierSpec: proportion must lie in [0, 1]");
  if (low > high) throw std::invalid_argument("OutlierSpec: low must be <= high");
}

void StableSpec::validate() const {
  if (!(dispersion > 0.0)) throw std::invalid_argument("StableSpec: dispersion must be positive");
  if (!(exponent > 0.0 && exponent <= 2.0))
    throw std::invalid_argument("StableSpec: exponent must lie in (0, 2]");
}

OutlierResult inject_outliers(const RealVector& y, const OutlierSpec& spec) {
  spec.validate();
  const Index n = y.size();
  const Index k = static_cast<Index>(std::floor(spec.proportion * static_cast<double>(n)));

  OutlierResult result;
  result.contaminated = y;
  if (k == 0) return result;

  std::mt19937_64 rng(spec.seed);
  std::vector<Index> order(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  // Partial Fisher-Yates: the first k entries are the contaminated rows.
  for (Index i = 0; i < k; ++i) {
    std::uniform_int_distribution<Index> pick(i, n - 1);
    std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(pick(rng))]);
  }
  result.indices.assign(order.begin(), order.begin() + k);
  std::sort(result.indices.begin(), result.indices.end());

  std::uniform_real_distribution<double> addend(spec.low, spec.high);
  for (Index idx : result.indices) result.contaminated(idx) += addend(rng);
  return result;
}

RealVector sample_stable(const StableSpec& spec, Index count) {
  spec.validate();
  if (count < 1) throw std::invalid_argument("sample_stable: count must be >= 1");

  const double mu = spec.exponent;
  const double scale = std::pow(spec.dispersion, 1.0 / mu);
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> half_circle(-std::numbers::pi / 2.0,
                                                     std::numbers::pi / 2.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  RealVector draws(count);
  for (Index i = 0; i < count; ++i) {
    const double v = half_circle(rng);
    const double e = -std::log1p(-unit(rng));  // Exp(1)
    double x;
    if (std::abs(mu - 1.0) < 1e-12) {
      x = std::tan(v);
    } else {
      x = std::sin(mu * v) / std::pow(std::cos(v), 1.0 / mu) *
          std::pow(std::cos(v - mu * v) / e, (1.0 - mu) / mu);
    }
    draws(i) = scale * x;
  }
  return draws;
}

RealVector add_stable_noise(const RealVector& y, const StableSpec& spec) {
  return y + sample_stable(spec, y.size());
}

}  // namespace arbls
