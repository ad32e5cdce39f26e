#pragma once

#include <cstdint>
#include <vector>

#include "arbls/types.hpp"

namespace arbls {

/// Adds a uniform draw from [low, high] to floor(proportion * N) distinct
/// target entries chosen uniformly at random.
struct OutlierSpec {
  double proportion = 0.0;  // P in [0, 1]
  double low = 0.0;
  double high = 1.0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Symmetric alpha-stable noise with characteristic function
/// exp(-dispersion * |x|^exponent).
struct StableSpec {
  double dispersion = 0.1;  // rho > 0
  double exponent = 1.5;    // mu in (0, 2]
  std::uint64_t seed = 0;

  void validate() const;
};

struct OutlierResult {
  RealVector contaminated;
  std::vector<Index> indices;  // contaminated rows, ascending
};

OutlierResult inject_outliers(const RealVector& y, const OutlierSpec& spec);

/// Chambers-Mallows-Stuck sampler: a standard SaS draw scaled by
/// dispersion^(1/exponent).
RealVector sample_stable(const StableSpec& spec, Index count);

RealVector add_stable_noise(const RealVector& y, const StableSpec& spec);

}  // namespace arbls
