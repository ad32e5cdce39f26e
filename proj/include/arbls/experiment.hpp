#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arbls/adaptive_optimizer.hpp"
#include "arbls/data_pipeline.hpp"
#include "arbls/irls_solver.hpp"
#include "arbls/types.hpp"

namespace arbls {

enum class Variant { Bls, Huber, Cauchy, Welsch, Arbls };

std::string to_string(Variant v);
Variant variant_from_string(const std::string& s);

/// Training-target contamination mode: none, proportional uniform outliers,
/// or symmetric alpha-stable noise. Parsed from "none", "outlier:P",
/// "stable:RHO,MU".
struct NoiseMode {
  enum class Kind { None, Outlier, Stable } kind = Kind::None;
  double proportion = 0.0;  // outlier P
  double dispersion = 0.1;  // stable rho
  double exponent = 1.5;    // stable mu

  static NoiseMode parse(const std::string& text);
  std::string label() const;
};

struct Range {
  int lo = 1;
  int hi = 1;
  int step = 1;

  std::vector<int> values() const;
};

struct StructureChoice {
  int n = 5, q = 5, m = 1, p = 40;
};

struct ExperimentConfig {
  std::string data_path;
  std::string target_column;
  bool has_header = true;

  std::vector<Variant> variants{Variant::Bls, Variant::Huber, Variant::Cauchy, Variant::Welsch,
                                Variant::Arbls};
  NoiseMode noise;
  int trials = 10;
  double split_fraction = 0.5;
  double lambda = kDefaultLambda;
  SolverConfig solver;
  AdaptiveConfig adaptive;
  std::uint64_t master_seed = 1;

  // Grid searched when no fixed structure is given (the usual search grid:
  // n 1..20 step 1, q 1..20 step 2, m = 1, p 1..200 step 5).
  Range n_range{1, 20, 1};
  Range q_range{1, 20, 2};
  Range m_range{1, 1, 1};
  Range p_range{1, 200, 5};
  std::optional<StructureChoice> fixed_structure;

  void validate() const;
};

struct TrialRow {
  int trial = 0;
  Variant variant = Variant::Bls;
  double rmse = 0.0;
  double mae = 0.0;
  double seconds = 0.0;
};

struct VariantSummary {
  Variant variant = Variant::Bls;
  double rmse_mean = 0.0, rmse_std = 0.0;
  double mae_mean = 0.0, mae_std = 0.0;
  double time_mean = 0.0;
};

struct ExperimentReport {
  std::string dataset;
  std::string noise_label;
  int trials = 0;
  StructureChoice structure;
  std::vector<TrialRow> rows;
  std::vector<VariantSummary> summary;
};

/// Exhaustive grid search over the configured structure ranges, scoring plain
/// ridge validation RMSE on an internal 80/20 split of `train`. Ties go to
/// the config with fewer total nodes.
NetworkConfig structure_search(const Dataset& train, const ExperimentConfig& cfg);

/// Full protocol: per trial, split / normalize on train params / contaminate
/// train targets / build the hidden matrix / fit every variant / score on
/// the untouched test targets. The structure is searched once on clean data
/// (or taken from fixed_structure) and reused across variants and trials.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// run_experiment on an already-loaded dataset (same contract otherwise).
ExperimentReport run_experiment_on(const Dataset& ds, const ExperimentConfig& cfg);

enum class ReportFormat { Plain, Csv, Json };

std::string render_report(const ExperimentReport& report, ReportFormat format);
ExperimentReport report_from_json(const std::string& json_text);

}  // namespace arbls
