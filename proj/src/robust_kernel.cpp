#include "arbls/robust_kernel.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <array>
#include <cmath>
#include <stdexcept>

namespace arbls {

namespace {

void require_positive_scale(double c) {
  if (!(c > 0.0)) throw std::domain_error("robust kernel: scale c must be positive");
}

bool near(double a, double b) { return std::abs(a - b) < kBranchBand; }

}  // namespace

void KernelSpec::validate() const {
  if (!(scale > 0.0)) throw std::domain_error("KernelSpec: scale must be positive");
  switch (family) {
    case KernelFamily::L2:
      break;
    case KernelFamily::Huber:
    case KernelFamily::Cauchy:
    case KernelFamily::Welsch:
      if (!(shape > 0.0))
        throw std::domain_error("KernelSpec: tuning constant must be positive");
      break;
    case KernelFamily::Adaptive:
      if (is_alpha_neg_inf(shape)) break;
      if (!(shape >= kAlphaMin && shape <= 2.0))
        throw std::domain_error("KernelSpec: adaptive shape must lie in [-10, 2]");
      break;
  }
}

double rho_general(double e, double alpha, double c) {
  require_positive_scale(c);
  const double x = (e / c) * (e / c);
  if (is_alpha_neg_inf(alpha)) return 1.0 - std::exp(-0.5 * x);
  if (near(alpha, 2.0)) return 0.5 * x;
  if (near(alpha, 0.0)) return std::log1p(0.5 * x);
  const double b = std::abs(alpha - 2.0);
  return (b / alpha) * (std::pow(x / b + 1.0, 0.5 * alpha) - 1.0);
}

double influence(double e, double alpha, double c) {
  require_positive_scale(c);
  if (is_alpha_neg_inf(alpha)) {
    const double x = (e / c) * (e / c);
    return e / (c * c) * std::exp(-0.5 * x);
  }
  if (near(alpha, 2.0)) return e / (c * c);
  if (near(alpha, 0.0)) return 2.0 * e / (e * e + 2.0 * c * c);
  const double b = std::abs(alpha - 2.0);
  const double x = (e / c) * (e / c);
  return e / (c * c) * std::pow(x / b + 1.0, 0.5 * alpha - 1.0);
}

double irls_weight(double u, const KernelSpec& spec) {
  spec.validate();
  const double au = std::abs(u);
  switch (spec.family) {
    case KernelFamily::L2:
      return 1.0;
    case KernelFamily::Huber:
      return (au <= spec.shape) ? 1.0 : spec.shape / au;
    case KernelFamily::Cauchy: {
      const double t = u / spec.shape;
      return 1.0 / (1.0 + t * t);
    }
    case KernelFamily::Welsch: {
      const double t = u / spec.shape;
      return std::exp(-t * t);
    }
    case KernelFamily::Adaptive: {
      const double c = spec.scale;
      const double alpha = spec.shape;
      const double inv_c2 = 1.0 / (c * c);
      if (is_alpha_neg_inf(alpha)) {
        const double x = (u / c) * (u / c);
        return inv_c2 * std::exp(-0.5 * x);
      }
      if (near(alpha, 2.0)) return inv_c2;
      if (near(alpha, 0.0)) return 2.0 / (u * u + 2.0 * c * c);
      const double b = std::abs(alpha - 2.0);
      const double x = (u / c) * (u / c);
      return inv_c2 * std::pow(x / b + 1.0, 0.5 * alpha - 1.0);
    }
  }
  return 1.0;
}

double kernel_rho(double u, const KernelSpec& spec) {
  spec.validate();
  const double au = std::abs(u);
  switch (spec.family) {
    case KernelFamily::L2:
      return 0.5 * u * u;
    case KernelFamily::Huber: {
      const double k = spec.shape;
      return (au <= k) ? 0.5 * u * u : k * au - 0.5 * k * k;
    }
    case KernelFamily::Cauchy: {
      const double cc = spec.shape * spec.shape;
      return 0.5 * cc * std::log1p(u * u / cc);
    }
    case KernelFamily::Welsch: {
      const double cc = spec.shape * spec.shape;
      return 0.5 * cc * (1.0 - std::exp(-u * u / cc));
    }
    case KernelFamily::Adaptive:
      return rho_general(u, spec.shape, spec.scale);
  }
  return 0.0;
}

double partition_exact(double alpha, double c) {
  require_positive_scale(c);
  if (alpha < 0.0)
    throw std::domain_error(
        "partition_exact: undefined for alpha < 0 (integral diverges); use partition_truncated");
  if (alpha > 2.0) throw std::domain_error("partition_exact: alpha must lie in [0, 2]");
  auto integrand = [alpha, c](double e) { return std::exp(-rho_general(e, alpha, c)); };
  const double half = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, 0.0, std::numeric_limits<double>::infinity(), 15, 1e-8);
  return 2.0 * half;
}

double partition_truncated(double alpha, double c, double epsilon) {
  require_positive_scale(c);
  if (!(epsilon > 0.0)) throw std::domain_error("partition_truncated: epsilon must be positive");

  // 5-point Gauss-Legendre nodes/weights on [-1, 1].
  static constexpr std::array<double, 5> gx = {
      -0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831, 0.9061798459386640};
  static constexpr std::array<double, 5> gw = {
      0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665,
      0.2369268850561891};

  constexpr int panels = 512;
  const double h = epsilon / panels;
  double total = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double mid = (i + 0.5) * h;
    double acc = 0.0;
    for (int j = 0; j < 5; ++j) {
      const double e = mid + 0.5 * h * gx[j];
      acc += gw[j] * std::exp(-rho_general(e, alpha, c));
    }
    total += 0.5 * h * acc;
  }
  return 2.0 * total;
}

PartitionTable build_partition_table(const std::vector<double>& alpha_grid, double c,
                                     double epsilon) {
  if (alpha_grid.empty()) throw std::domain_error("build_partition_table: empty alpha grid");
  for (std::size_t i = 0; i + 1 < alpha_grid.size(); ++i)
    if (!(alpha_grid[i] < alpha_grid[i + 1]))
      throw std::domain_error("build_partition_table: grid must be strictly increasing");
  if (alpha_grid.front() < kAlphaMin - 1e-9 || alpha_grid.back() > 2.0 + 1e-9)
    throw std::domain_error("build_partition_table: grid must lie within [-10, 2]");

  PartitionTable table;
  table.alphas_ = alpha_grid;
  table.epsilon_ = epsilon;
  table.log_values_.reserve(alpha_grid.size());
  for (double a : alpha_grid) {
    const double z = partition_truncated(a, c, epsilon);
    const double lz = std::log(z);
    if (!std::isfinite(lz))
      throw std::runtime_error("build_partition_table: non-finite log partition value");
    table.log_values_.push_back(lz);
  }
  return table;
}

double PartitionTable::log_partition(double alpha) const {
  if (!contains(alpha))
    throw std::domain_error("PartitionTable: alpha outside the tabulated range");
  if (alphas_.size() == 1) return log_values_.front();
  auto it = std::upper_bound(alphas_.begin(), alphas_.end(), alpha);
  std::size_t hi = std::min<std::size_t>(std::distance(alphas_.begin(), it), alphas_.size() - 1);
  if (hi == 0) hi = 1;
  const std::size_t lo = hi - 1;
  const double t = (alpha - alphas_[lo]) / (alphas_[hi] - alphas_[lo]);
  return log_values_[lo] + t * (log_values_[hi] - log_values_[lo]);
}

double adaptive_nll(double e, double alpha, double c, const PartitionTable& table) {
  require_positive_scale(c);
  return rho_general(e, alpha, c) + std::log(c) + table.log_partition(alpha);
}

}  // namespace arbls
