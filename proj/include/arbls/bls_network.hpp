#pragma once

#include <cstdint>
#include <vector>

#include "arbls/types.hpp"

namespace arbls {

inline constexpr double kDefaultLambda = 9.313225746154785e-10;  // 2^-30

/// Structural parameters of the flat random-feature network: n feature-node
/// groups of q nodes each, m enhancement groups of p nodes each, plus the
/// ridge coefficient and the seed that freezes the random projections.
struct NetworkConfig {
  int feature_groups = 5;       // n
  int nodes_per_group = 5;      // q
  int enhancement_groups = 1;   // m
  int enhancement_nodes = 40;   // p
  double lambda = kDefaultLambda;
  std::uint64_t seed = 0;
  // The usual search ranges are n,q in [1,20], p in [1,200]; set this to use
  // configurations outside them.
  bool allow_out_of_range = false;

  int hidden_width() const {
    return feature_groups * nodes_per_group + enhancement_groups * enhancement_nodes;
  }
  void validate() const;
};

/// Randomly generated, thereafter immutable projection parameters.
/// feature_weights[i] is t x q with bias q; enhancement_weights[j] is
/// (n*q) x p with bias p. Regeneration from the same seed is bit-identical.
struct FrozenNodes {
  std::vector<RealMatrix> feature_weights;
  std::vector<RealVector> feature_biases;
  std::vector<RealMatrix> enhancement_weights;
  std::vector<RealVector> enhancement_biases;
  NetworkConfig config;
  int feature_dim = 0;
};

/// Draws every weight and bias i.i.d. uniform on [-1, 1] from a seeded
/// generator.
FrozenNodes init_nodes(int feature_dim, const NetworkConfig& config);

/// Hidden representation A = [Z^n | H^m]: feature groups Z_i = X*W_ei + b_ei
/// (linear mapping), enhancement groups H_j = tanh(Z^n*W_hj + b_hj).
/// Column j means the same node at train and prediction time.
RealMatrix build_hidden(const RealMatrix& X, const FrozenNodes& nodes);

}  // namespace arbls
