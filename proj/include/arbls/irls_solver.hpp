#pragma once

#include <vector>

#include "arbls/bls_network.hpp"
#include "arbls/robust_kernel.hpp"
#include "arbls/types.hpp"

namespace arbls {

struct SolverConfig {
  double lambda = kDefaultLambda;
  double tolerance = 1e-6;  // nu: stop when ||W_t - W_t+1||_2 < nu
  int max_iters = 50;       // T

  void validate() const;
};

/// Iteration bookkeeping. objective_history holds the penalized robust
/// objective sum_i rho(u_i) + (lambda/2)||W||^2 at each iterate (one entry per
/// update plus the final iterate); it is non-increasing for fixed-kernel fits
/// and for the adaptive fit under the fixed-one scale policy.
struct FitTrace {
  int iterations = 0;
  std::vector<double> objective_history;
  std::vector<double> weight_deltas;
  bool converged = false;
};

struct FitResult {
  RealMatrix weights;
  FitTrace trace;
};

/// Ridge regression W = (A^T A + lambda I)^{-1} A^T Y, computed by an LDLT
/// solve of the regularized normal equations.
RealMatrix ridge_solve(const RealMatrix& A, const RealMatrix& Y, double lambda);

/// u_i = 0.6745 * e_i / max(MAD(e), 1e-8) with MAD = med(|e - med(e)|).
RealVector normalized_residuals(const RealVector& e);

/// Element-wise irls_weight: the diagonal of the weighting operator, kept as
/// a vector.
RealVector weighting_operator(const RealVector& u, const KernelSpec& spec);

/// Solves (A^T diag(w) A + lambda I) W = A^T diag(w) Y with the weights
/// applied as row scaling. Uses an SVD of the scaled design matrix; with
/// lambda as small as 2^-30 the normal-equations route is too ill-conditioned
/// on rank-deficient hidden matrices for the iterates to settle.
RealMatrix weighted_ridge_solve(const RealMatrix& A, const RealMatrix& Y,
                                const RealVector& weights, double lambda);

/// Iteratively reweighted least squares with a fixed kernel. Starts from the
/// ridge solution, freezes the robust residual scale at the initial MAD, then
/// alternates weighting and weighted ridge solves until ||dW|| < nu or T
/// iterations. For multi-output Y the first output column's residuals drive
/// the row weights.
FitResult irls_fit(const RealMatrix& A, const RealMatrix& Y, const KernelSpec& spec,
                   const SolverConfig& cfg);

}  // namespace arbls
