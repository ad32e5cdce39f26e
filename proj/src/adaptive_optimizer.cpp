#include "arbls/adaptive_optimizer.hpp"

#include <cmath>
#include <stdexcept>

#include "arbls/detail/irls_loop.hpp"
#include "arbls/stats.hpp"

namespace arbls {

void AdaptiveConfig::validate() const {
  if (!(alpha_min < 2.0)) throw std::invalid_argument("AdaptiveConfig: alpha_min must be < 2");
  if (alpha_min < kAlphaMin - 1e-9)
    throw std::invalid_argument("AdaptiveConfig: alpha_min below the supported -10");
  if (!(alpha_step > 0.0)) throw std::invalid_argument("AdaptiveConfig: alpha_step must be > 0");
  if (!(epsilon > 0.0)) throw std::invalid_argument("AdaptiveConfig: epsilon must be > 0");
  solver.validate();
}

std::vector<double> AdaptiveConfig::make_grid() const {
  validate();
  std::vector<double> grid;
  for (int i = 0;; ++i) {
    const double a = alpha_min + i * alpha_step;
    if (a > 2.0 + 1e-12) break;
    grid.push_back(std::min(a, 2.0));
  }
  if (grid.empty() || grid.back() < 2.0 - 1e-12) grid.push_back(2.0);
  return grid;
}

double select_alpha(const RealVector& u, double c, const PartitionTable& table,
                    const std::vector<double>& grid) {
  if (grid.empty()) throw std::domain_error("select_alpha: empty alpha grid");
  if (!(c > 0.0)) throw std::domain_error("select_alpha: scale must be positive");
  for (double a : grid)
    if (!table.contains(a))
      throw std::domain_error("select_alpha: grid point outside the partition table range");

  double best_alpha = grid.front();
  double best_value = std::numeric_limits<double>::infinity();
  const double n = static_cast<double>(u.size());
  const Eigen::ArrayXd x = (u.array() / c).square();  // (u/c)^2, shared across the grid
  for (double a : grid) {
    double value = n * (std::log(c) + table.log_partition(a));
    if (std::abs(a - 2.0) < kBranchBand) {
      value += 0.5 * x.sum();
    } else if (std::abs(a) < kBranchBand) {
      value += (0.5 * x).log1p().sum();
    } else {
      const double b = std::abs(a - 2.0);
      value += (b / a) * ((x / b + 1.0).pow(0.5 * a) - 1.0).sum();
    }
    if (value <= best_value) {  // <= so ties land on the larger alpha
      best_value = value;
      best_alpha = a;
    }
  }
  return best_alpha;
}

double determine_scale(const RealVector& u, ScalePolicy policy) {
  if (u.size() == 0) throw std::invalid_argument("determine_scale: empty residual vector");
  if (policy == ScalePolicy::FixedOne) return 1.0;
  return std::max(1.4826 * mad(u), 1e-8);
}

AdaptiveFitResult arbls_fit(const RealMatrix& A, const RealMatrix& Y, const AdaptiveConfig& cfg) {
  cfg.validate();
  const std::vector<double> grid = cfg.make_grid();
  const PartitionTable table = build_partition_table(grid, 1.0, cfg.epsilon);

  AdaptiveFitResult result;
  AdaptiveTrace& trace = result.trace;
  const double n = static_cast<double>(A.rows());

  FitResult fit = detail::irls_loop(
      A, Y, cfg.solver, [&](const RealVector& u, int) {
        const double c = determine_scale(u, cfg.c_policy);
        const double alpha = select_alpha(u, c, table, grid);
        trace.alpha_history.push_back(alpha);
        trace.c_history.push_back(c);
        detail::IterationKernel ik;
        ik.spec = KernelSpec::adaptive(alpha, c);
        ik.extra_objective = n * (std::log(c) + table.log_partition(alpha));
        return ik;
      });

  result.weights = std::move(fit.weights);
  trace.fit_trace = std::move(fit.trace);
  return result;
}

}  // namespace arbls
