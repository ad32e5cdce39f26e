#pragma once

#include <limits>
#include <vector>

#include "arbls/types.hpp"

namespace arbls {

// Lower end of the shape-parameter range. Below roughly -10 the weighting
// behaviour is indistinguishable from the alpha -> -inf (Welsch-shaped) limit.
inline constexpr double kAlphaMin = -10.0;

// Shape values inside this band of the removable singularities at alpha = 0
// and alpha = 2 are evaluated on the exact closed-form branch; the general
// branch converges only logarithmically near alpha = 2, so a narrow band
// would leave visible seams for large |e/c|.
inline constexpr double kBranchBand = 1e-3;

// 95%-Gaussian-efficiency tuning constants for the fixed M-estimators.
inline constexpr double kHuberK95 = 1.345;
inline constexpr double kCauchyC95 = 2.3849;
inline constexpr double kWelschC95 = 2.9846;

/// Sentinel for alpha = -inf (the exponential-saturation branch). Any
/// non-finite negative value, or anything at or below -1e8, is treated the
/// same way.
inline constexpr double kAlphaNegInf = -std::numeric_limits<double>::infinity();

inline bool is_alpha_neg_inf(double alpha) {
  return alpha <= -1e8;  // covers -inf and large-negative sentinels
}

enum class KernelFamily { L2, Huber, Cauchy, Welsch, Adaptive };

/// Selects a robust loss family together with its parameters.
/// `shape` holds alpha for Adaptive, the tuning constant for Huber/Cauchy/
/// Welsch, and is ignored for L2. `scale` is the width c of the quadratic
/// region (used by the Adaptive family; fixed families keep it at 1 because
/// their tuning constant already lives in normalized-residual units).
struct KernelSpec {
  KernelFamily family = KernelFamily::L2;
  double shape = 0.0;
  double scale = 1.0;

  static KernelSpec l2() { return {KernelFamily::L2, 0.0, 1.0}; }
  static KernelSpec huber(double k = kHuberK95) { return {KernelFamily::Huber, k, 1.0}; }
  static KernelSpec cauchy(double c = kCauchyC95) { return {KernelFamily::Cauchy, c, 1.0}; }
  static KernelSpec welsch(double c = kWelschC95) { return {KernelFamily::Welsch, c, 1.0}; }
  static KernelSpec adaptive(double alpha, double c = 1.0) {
    return {KernelFamily::Adaptive, alpha, c};
  }

  /// Throws std::domain_error when the parameters are outside the family's
  /// admissible range (scale <= 0, adaptive shape outside [-10, 2]).
  void validate() const;
};

/// Barron's general robust loss rho(e, alpha, c). Dispatches to the exact
/// closed forms near alpha = 2 (quadratic), alpha = 0 (log), and at the
/// alpha = -inf sentinel (exponential saturation).
double rho_general(double e, double alpha, double c);

/// d rho / d e, branch-consistent with rho_general. Odd in e.
double influence(double e, double alpha, double c);

/// IRLS weight phi(u)/u with the removable singularity at u = 0 filled by the
/// analytic limit. Fixed families use the classical weight functions:
/// L2 -> 1, Huber -> min(1, k/|u|), Cauchy -> 1/(1+(u/c)^2),
/// Welsch -> exp(-(u/c)^2).
double irls_weight(double u, const KernelSpec& spec);

/// Loss value paired with irls_weight: classical rho for the fixed families
/// (scaled so that phi(u)/u reproduces the weights above), rho_general for
/// Adaptive. This is the per-sample term of the IRLS descent objective.
double kernel_rho(double u, const KernelSpec& spec);

/// Partition integral of exp(-rho) over the whole real line, by adaptive
/// quadrature (relative tolerance 1e-8) on [0, inf) doubled. Defined only for
/// alpha in [0, 2]; the integral diverges for negative alpha.
double partition_exact(double alpha, double c);

/// Truncated partition integral over [-epsilon, epsilon], composite
/// fixed-order quadrature (512 panels on the half range, even symmetry
/// doubled). Finite for every alpha in [-10, 2].
double partition_truncated(double alpha, double c, double epsilon);

/// Precomputed log Z-hat(alpha) over a sorted alpha grid, with linear
/// interpolation between grid points. Immutable after construction.
class PartitionTable {
 public:
  const std::vector<double>& alphas() const { return alphas_; }
  const std::vector<double>& log_values() const { return log_values_; }
  double epsilon() const { return epsilon_; }

  double alpha_lo() const { return alphas_.front(); }
  double alpha_hi() const { return alphas_.back(); }
  bool contains(double alpha) const {
    return alpha >= alpha_lo() - 1e-12 && alpha <= alpha_hi() + 1e-12;
  }

  /// Linearly interpolated log Z-hat(alpha); throws std::domain_error outside
  /// the grid range.
  double log_partition(double alpha) const;

 private:
  friend PartitionTable build_partition_table(const std::vector<double>&, double, double);
  PartitionTable() = default;

  std::vector<double> alphas_;
  std::vector<double> log_values_;
  double epsilon_ = 0.0;
};

/// Evaluates partition_truncated once per grid point. The grid must be
/// non-empty, strictly increasing, and within [-10, 2].
PartitionTable build_partition_table(const std::vector<double>& alpha_grid, double c,
                                     double epsilon);

/// Truncated negative log-likelihood rho(e, alpha, c) + log(c * Z-hat(alpha)),
/// with log Z-hat interpolated from the table.
double adaptive_nll(double e, double alpha, double c, const PartitionTable& table);

}  // namespace arbls
