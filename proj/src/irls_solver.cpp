#include "arbls/irls_solver.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "arbls/detail/irls_loop.hpp"
#include "arbls/stats.hpp"

namespace arbls {

void SolverConfig::validate() const {
  if (!(lambda > 0.0)) throw std::invalid_argument("SolverConfig: lambda must be positive");
  if (!(tolerance > 0.0)) throw std::invalid_argument("SolverConfig: tolerance must be positive");
  if (max_iters < 1) throw std::invalid_argument("SolverConfig: max_iters must be >= 1");
}

RealMatrix ridge_solve(const RealMatrix& A, const RealMatrix& Y, double lambda) {
  if (A.rows() != Y.rows())
    throw std::invalid_argument("ridge_solve: A and Y row counts differ");
  if (!(lambda > 0.0)) throw std::invalid_argument("ridge_solve: lambda must be positive");
  RealMatrix gram = A.transpose() * A;
  gram.diagonal().array() += lambda;
  return gram.ldlt().solve(A.transpose() * Y);
}

RealVector normalized_residuals(const RealVector& e) {
  if (e.size() == 0) throw std::invalid_argument("normalized_residuals: empty residual vector");
  const double scale = std::max(mad(e), detail::kMadFloor);
  return detail::kMadConsistency / scale * e;
}

RealVector weighting_operator(const RealVector& u, const KernelSpec& spec) {
  spec.validate();
  RealVector w(u.size());
  for (Index i = 0; i < u.size(); ++i) w(i) = irls_weight(u(i), spec);
  return w;
}

RealMatrix weighted_ridge_solve(const RealMatrix& A, const RealMatrix& Y,
                                const RealVector& weights, double lambda) {
  if (A.rows() != Y.rows())
    throw std::invalid_argument("weighted_ridge_solve: A and Y row counts differ");
  if (weights.size() != A.rows())
    throw std::invalid_argument("weighted_ridge_solve: weight vector length must equal N");
  if ((weights.array() < 0.0).any())
    throw std::invalid_argument("weighted_ridge_solve: weights must be non-negative");
  if (!(lambda > 0.0)) throw std::invalid_argument("weighted_ridge_solve: lambda must be positive");

  const RealVector sw = weights.array().sqrt();
  const RealMatrix As = sw.asDiagonal() * A;
  const RealMatrix Ys = sw.asDiagonal() * Y;

  auto filtered_solve = [lambda](const Eigen::BDCSVD<RealMatrix>& svd, const RealMatrix& rhs) {
    const RealVector& sv = svd.singularValues();
    RealVector filter(sv.size());
    for (Index i = 0; i < sv.size(); ++i) filter(i) = sv(i) / (sv(i) * sv(i) + lambda);
    return RealMatrix(svd.matrixV() *
                      (filter.asDiagonal() * (svd.matrixU().transpose() * rhs)));
  };

  if (As.rows() >= As.cols()) {
    // Tall case: reduce to the d x d triangular factor first; the SVD of R
    // shares the singular values of As and is much cheaper.
    const Index d = As.cols();
    Eigen::HouseholderQR<RealMatrix> qr(As);
    const RealMatrix r = qr.matrixQR().topRows(d).triangularView<Eigen::Upper>();
    const RealMatrix qt_y = (qr.householderQ().adjoint() * Ys).topRows(d);
    Eigen::BDCSVD<RealMatrix> svd(r, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return filtered_solve(svd, qt_y);
  }
  Eigen::BDCSVD<RealMatrix> svd(As, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return filtered_solve(svd, Ys);
}

FitResult irls_fit(const RealMatrix& A, const RealMatrix& Y, const KernelSpec& spec,
                   const SolverConfig& cfg) {
  spec.validate();
  return detail::irls_loop(
      A, Y, cfg, [&spec](const RealVector&, int) { return detail::IterationKernel{spec, 0.0}; });
}

}  // namespace arbls
