#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "arbls/noise_lab.hpp"
#include "arbls/stats.hpp"

using namespace arbls;

TEST_CASE("inject_outliers proportions") {
  const RealVector y = RealVector::LinSpaced(1000, 0.0, 1.0);

  OutlierSpec none{0.0, 0.0, 1.0, 5};
  const auto r0 = inject_outliers(y, none);
  CHECK(r0.indices.empty());
  CHECK(r0.contaminated == y);

  OutlierSpec all{1.0, 3.0, 3.0, 5};
  const auto r1 = inject_outliers(y, all);
  CHECK(r1.indices.size() == 1000);
  CHECK(((r1.contaminated - y).array() - 3.0).abs().maxCoeff() <= 1e-12);

  OutlierSpec third{0.3, 0.0, 1.0, 5};
  const auto r2 = inject_outliers(y, third);
  CHECK(r2.indices.size() == 300);
  const std::set<Index> unique(r2.indices.begin(), r2.indices.end());
  CHECK(unique.size() == 300);
  CHECK(std::is_sorted(r2.indices.begin(), r2.indices.end()));
  // untouched rows unchanged
  for (Index i = 0; i < y.size(); ++i)
    if (!unique.count(i)) CHECK(r2.contaminated(i) == y(i));
}

TEST_CASE("inject_outliers determinism") {
  const RealVector y = RealVector::Random(64);
  OutlierSpec spec{0.25, -1.0, 1.0, 99};
  const auto a = inject_outliers(y, spec);
  const auto b = inject_outliers(y, spec);
  CHECK(a.contaminated == b.contaminated);
  CHECK(a.indices == b.indices);
  spec.seed = 100;
  const auto c = inject_outliers(y, spec);
  CHECK(a.contaminated != c.contaminated);
}

TEST_CASE("sample_stable moment oracles") {
  // mu = 2 is N(0, 2*rho)
  StableSpec gauss{0.1, 2.0, 7};
  const RealVector g = sample_stable(gauss, 100000);
  const double var = g.squaredNorm() / static_cast<double>(g.size()) -
                     std::pow(g.mean(), 2);
  CHECK(std::abs(var - 0.2) <= 0.05 * 0.2);

  // mu = 1, rho = 1 is standard Cauchy: median 0, IQR 2
  StableSpec cauchy{1.0, 1.0, 8};
  RealVector c = sample_stable(cauchy, 100000);
  std::vector<double> sorted(c.data(), c.data() + c.size());
  std::sort(sorted.begin(), sorted.end());
  const double med = quantile_sorted(sorted, 0.5);
  const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
  CHECK(std::abs(med) <= 0.02);
  CHECK(std::abs(iqr - 2.0) <= 0.05 * 2.0);
}

TEST_CASE("sample_stable symmetry at the benchmark parameters") {
  StableSpec spec{0.1, 1.5, 9};
  const RealVector x = sample_stable(spec, 100000);
  CHECK(std::abs(median(x)) <= 0.02);
}

TEST_CASE("stable scaling identity") {
  StableSpec unit{1.0, 1.5, 12};
  StableSpec scaled{0.1, 1.5, 12};
  const RealVector a = sample_stable(unit, 500);
  const RealVector b = sample_stable(scaled, 500);
  const double factor = std::pow(0.1, 1.0 / 1.5);
  CHECK((b - factor * a).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("add_stable_noise") {
  const RealVector y = RealVector::Random(100);

  StableSpec tiny{1e-12, 2.0, 3};
  const RealVector out = add_stable_noise(y, tiny);
  CHECK((out - y).cwiseAbs().maxCoeff() <= 1e-3);

  StableSpec spec{0.1, 1.5, 4};
  CHECK(add_stable_noise(y, spec) == add_stable_noise(y, spec));
  StableSpec other = spec;
  other.seed = 5;
  CHECK(add_stable_noise(y, spec) != add_stable_noise(y, other));
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS((OutlierSpec{1.5, 0.0, 1.0, 0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((OutlierSpec{0.5, 2.0, 1.0, 0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((StableSpec{0.0, 1.5, 0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((StableSpec{0.1, 2.5, 0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((StableSpec{0.1, 0.0, 0}.validate()), std::invalid_argument);
}
