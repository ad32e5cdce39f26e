#include "arbls/bls_network.hpp"

#include <random>
#include <stdexcept>

namespace arbls {

void NetworkConfig::validate() const {
  if (feature_groups < 1 || nodes_per_group < 1 || enhancement_groups < 1 ||
      enhancement_nodes < 1)
    throw std::invalid_argument("NetworkConfig: all node counts must be >= 1");
  if (!(lambda > 0.0)) throw std::invalid_argument("NetworkConfig: lambda must be positive");
  if (allow_out_of_range) return;
  if (feature_groups > 20 || nodes_per_group > 20 || enhancement_nodes > 200)
    throw std::invalid_argument(
        "NetworkConfig: outside the usual search ranges (n,q <= 20, p <= 200); "
        "set allow_out_of_range to override");
}

FrozenNodes init_nodes(int feature_dim, const NetworkConfig& config) {
  if (feature_dim < 1) throw std::invalid_argument("init_nodes: feature_dim must be >= 1");
  config.validate();

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  auto fill_matrix = [&](RealMatrix& m) {
    for (Index r = 0; r < m.rows(); ++r)
      for (Index c = 0; c < m.cols(); ++c) m(r, c) = unit(rng);
  };
  auto fill_vector = [&](RealVector& v) {
    for (Index i = 0; i < v.size(); ++i) v(i) = unit(rng);
  };

  FrozenNodes nodes;
  nodes.config = config;
  nodes.feature_dim = feature_dim;
  for (int i = 0; i < config.feature_groups; ++i) {
    RealMatrix w(feature_dim, config.nodes_per_group);
    RealVector b(config.nodes_per_group);
    fill_matrix(w);
    fill_vector(b);
    nodes.feature_weights.push_back(std::move(w));
    nodes.feature_biases.push_back(std::move(b));
  }
  const int z_width = config.feature_groups * config.nodes_per_group;
  for (int j = 0; j < config.enhancement_groups; ++j) {
    RealMatrix w(z_width, config.enhancement_nodes);
    RealVector b(config.enhancement_nodes);
    fill_matrix(w);
    fill_vector(b);
    nodes.enhancement_weights.push_back(std::move(w));
    nodes.enhancement_biases.push_back(std::move(b));
  }
  return nodes;
}

RealMatrix build_hidden(const RealMatrix& X, const FrozenNodes& nodes) {
  if (X.cols() != nodes.feature_dim)
    throw std::invalid_argument("build_hidden: X column count does not match feature_dim");

  const auto& cfg = nodes.config;
  const Index n_rows = X.rows();
  const int z_width = cfg.feature_groups * cfg.nodes_per_group;
  RealMatrix A(n_rows, cfg.hidden_width());

  for (int i = 0; i < cfg.feature_groups; ++i) {
    A.middleCols(static_cast<Index>(i) * cfg.nodes_per_group, cfg.nodes_per_group) =
        (X * nodes.feature_weights[i]).rowwise() + nodes.feature_biases[i].transpose();
  }
  const auto Z = A.leftCols(z_width);
  for (int j = 0; j < cfg.enhancement_groups; ++j) {
    A.middleCols(z_width + static_cast<Index>(j) * cfg.enhancement_nodes, cfg.enhancement_nodes) =
        ((Z * nodes.enhancement_weights[j]).rowwise() + nodes.enhancement_biases[j].transpose())
            .array()
            .tanh();
  }
  return A;
}

}  // namespace arbls
