#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

#include "arbls/irls_solver.hpp"
#include "arbls/stats.hpp"

namespace arbls::detail {

inline constexpr double kMadConsistency = 0.6745;  // Phi^{-1}(3/4): MAD -> sigma at the Gaussian
inline constexpr double kMadFloor = 1e-8;

// Kernel chosen for one update, plus any residual-independent objective term
// (the adaptive fit contributes N * log(c * Zhat(alpha)) here).
struct IterationKernel {
  KernelSpec spec;
  double extra_objective = 0.0;
};

// Shared reweighting loop for the fixed-kernel and adaptive fits.
// select_kernel(u, t) picks the kernel for iteration t from the current
// normalized residuals.
//
// The robust scale is frozen at the MAD of the initial ridge residuals:
// re-estimating it every iteration makes the monitored objective
// non-monotone (the scale shrinks as the fit sharpens, inflating every
// normalized residual). The ridge penalty is mapped into normalized-residual
// units (lambda_eff) so each update minimizes the quadratic majorizer of
// sum_i rho(u_i) + (lambda/2)||W||^2 exactly.
template <typename SelectKernel>
FitResult irls_loop(const RealMatrix& A, const RealMatrix& Y, const SolverConfig& cfg,
                    SelectKernel&& select_kernel) {
  cfg.validate();
  if (A.rows() != Y.rows()) throw std::invalid_argument("irls_fit: A and Y row counts differ");
  if (A.rows() == 0 || Y.cols() == 0) throw std::invalid_argument("irls_fit: empty problem");

  FitResult result;
  result.weights = ridge_solve(A, Y, cfg.lambda);

  const RealVector e0 = A * result.weights.col(0) - Y.col(0);
  const double s0 = std::max(mad(e0), kMadFloor);
  const double to_u = kMadConsistency / s0;
  const double lambda_eff = cfg.lambda / (to_u * to_u);

  auto objective = [&](const RealVector& u, const IterationKernel& ik) {
    double loss = ik.extra_objective;
    for (Index i = 0; i < u.size(); ++i) loss += kernel_rho(u(i), ik.spec);
    return loss + 0.5 * cfg.lambda * result.weights.squaredNorm();
  };

  FitTrace& trace = result.trace;
  IterationKernel last{KernelSpec::l2(), 0.0};
  for (int t = 0; t < cfg.max_iters; ++t) {
    const RealVector u = to_u * (A * result.weights.col(0) - Y.col(0));
    last = select_kernel(u, t);
    trace.objective_history.push_back(objective(u, last));

    const RealVector w = weighting_operator(u, last.spec);
    RealMatrix next = weighted_ridge_solve(A, Y, w, lambda_eff);
    if (!next.allFinite())
      throw std::runtime_error("irls_fit: non-finite weights at iteration " + std::to_string(t));

    const double delta = (result.weights - next).norm();
    trace.weight_deltas.push_back(delta);
    result.weights = std::move(next);
    trace.iterations = t + 1;
    if (delta < cfg.tolerance) {
      trace.converged = true;
      break;
    }
  }

  // Final iterate under the last kernel used.
  const RealVector u = to_u * (A * result.weights.col(0) - Y.col(0));
  trace.objective_history.push_back(objective(u, last));
  return result;
}

}  // namespace arbls::detail
