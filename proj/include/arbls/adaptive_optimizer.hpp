#pragma once

#include <vector>

#include "arbls/irls_solver.hpp"
#include "arbls/robust_kernel.hpp"
#include "arbls/types.hpp"

namespace arbls {

/// How the kernel width c is chosen each outer iteration. FixedOne keeps
/// c = 1 (residuals are already MAD-standardized); MadScale re-derives it
/// from the current normalized residuals as 1.4826 * MAD(u). Note the
/// objective-descent guarantee of the trace holds under FixedOne; MadScale
/// moves the kernel width between iterations, which the descent argument
/// does not cover.
enum class ScalePolicy { FixedOne, MadScale };

struct AdaptiveConfig {
  double alpha_min = kAlphaMin;
  double alpha_step = 0.1;
  double epsilon = 10.0;  // truncation limit of the partition integral
  ScalePolicy c_policy = ScalePolicy::FixedOne;
  SolverConfig solver;

  void validate() const;
  /// {alpha_min, alpha_min + step, ..., 2}.
  std::vector<double> make_grid() const;
};

struct AdaptiveTrace {
  std::vector<double> alpha_history;  // shape selected at each outer iteration
  std::vector<double> c_history;
  FitTrace fit_trace;
};

struct AdaptiveFitResult {
  RealMatrix weights;
  AdaptiveTrace trace;
};

/// argmin over the grid of sum_i adaptive_nll(u_i, alpha, c); ties broken
/// toward the larger alpha.
double select_alpha(const RealVector& u, double c, const PartitionTable& table,
                    const std::vector<double>& grid);

/// Kernel width per the policy: 1.0, or 1.4826 * MAD(u) floored at 1e-8.
double determine_scale(const RealVector& u, ScalePolicy policy);

/// Alternating optimization of (W, alpha): per outer iteration, select alpha
/// by grid search over the truncated NLL of the current normalized residuals,
/// then take one weighted ridge step with the Adaptive(alpha, c) kernel.
AdaptiveFitResult arbls_fit(const RealMatrix& A, const RealMatrix& Y, const AdaptiveConfig& cfg);

}  // namespace arbls
