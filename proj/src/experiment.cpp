#include "arbls/experiment.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "arbls/bls_network.hpp"
#include "arbls/noise_lab.hpp"

namespace arbls {

namespace {

using json = nlohmann::json;

// Seed derivation salts; each (purpose, trial) pair gets its own stream.
enum SeedPurpose : std::uint64_t {
  kSeedStructureSplit = 11,
  kSeedStructureNodes = 12,
  kSeedTrialSplit = 1000,
  kSeedTrialNoise = 2000,
  kSeedTrialNodes = 3000,
};

double elapsed_seconds(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::string to_string(Variant v) {
  switch (v) {
    case Variant::Bls: return "bls";
    case Variant::Huber: return "huber";
    case Variant::Cauchy: return "cauchy";
    case Variant::Welsch: return "welsch";
    case Variant::Arbls: return "arbls";
  }
  return "?";
}

Variant variant_from_string(const std::string& s) {
  if (s == "bls") return Variant::Bls;
  if (s == "huber") return Variant::Huber;
  if (s == "cauchy") return Variant::Cauchy;
  if (s == "welsch") return Variant::Welsch;
  if (s == "arbls") return Variant::Arbls;
  throw std::invalid_argument("unknown variant: " + s);
}

NoiseMode NoiseMode::parse(const std::string& text) {
  NoiseMode mode;
  if (text == "none" || text.empty()) return mode;
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (head == "outlier") {
    mode.kind = Kind::Outlier;
    mode.proportion = std::stod(args);
    if (!(mode.proportion >= 0.0 && mode.proportion <= 1.0))
      throw std::invalid_argument("noise outlier proportion must lie in [0, 1]");
    return mode;
  }
  if (head == "stable") {
    mode.kind = Kind::Stable;
    const auto comma = args.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("stable noise needs RHO,MU");
    mode.dispersion = std::stod(args.substr(0, comma));
    mode.exponent = std::stod(args.substr(comma + 1));
    return mode;
  }
  throw std::invalid_argument("unknown noise mode: " + text);
}

std::string NoiseMode::label() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::None: return "none";
    case Kind::Outlier:
      out << "outlier:" << proportion;
      return out.str();
    case Kind::Stable:
      out << "stable:" << dispersion << "," << exponent;
      return out.str();
  }
  return "none";
}

std::vector<int> Range::values() const {
  if (lo > hi || step < 1) throw std::invalid_argument("Range: need lo <= hi and step >= 1");
  std::vector<int> out;
  for (int v = lo; v <= hi; v += step) out.push_back(v);
  return out;
}

void ExperimentConfig::validate() const {
  if (trials < 1) throw std::invalid_argument("ExperimentConfig: trials must be >= 1");
  if (!(split_fraction > 0.0 && split_fraction < 1.0))
    throw std::invalid_argument("ExperimentConfig: split fraction must lie in (0, 1)");
  if (!(lambda > 0.0)) throw std::invalid_argument("ExperimentConfig: lambda must be positive");
  if (variants.empty()) return;  // header-only report is allowed
}

NetworkConfig structure_search(const Dataset& train, const ExperimentConfig& cfg) {
  cfg.validate();
  const auto [fit_part, val_part] = split(train, 0.8, mix_seed(cfg.master_seed, kSeedStructureSplit));
  const std::uint64_t node_seed = mix_seed(cfg.master_seed, kSeedStructureNodes);

  NetworkConfig best;
  double best_rmse = std::numeric_limits<double>::infinity();
  long best_nodes = std::numeric_limits<long>::max();
  bool found = false;

  for (int n : cfg.n_range.values())
    for (int q : cfg.q_range.values())
      for (int m : cfg.m_range.values())
        for (int p : cfg.p_range.values()) {
          NetworkConfig candidate;
          candidate.feature_groups = n;
          candidate.nodes_per_group = q;
          candidate.enhancement_groups = m;
          candidate.enhancement_nodes = p;
          candidate.lambda = cfg.lambda;
          candidate.seed = node_seed;

          const FrozenNodes nodes = init_nodes(static_cast<int>(train.dims()), candidate);
          const RealMatrix a_fit = build_hidden(fit_part.features, nodes);
          const RealMatrix w = ridge_solve(a_fit, fit_part.targets, cfg.lambda);
          const RealMatrix a_val = build_hidden(val_part.features, nodes);
          const double score = rmse(val_part.targets, a_val * w);

          const long total = static_cast<long>(candidate.hidden_width());
          const bool better =
              score < best_rmse || (score == best_rmse && total < best_nodes);
          if (!found || better) {
            best = candidate;
            best_rmse = score;
            best_nodes = total;
            found = true;
          }
        }
  if (!found) throw std::invalid_argument("structure_search: empty search grid");
  return best;
}

namespace {

RealMatrix fit_variant(Variant variant, const RealMatrix& A, const RealVector& y,
                       const ExperimentConfig& cfg) {
  switch (variant) {
    case Variant::Bls:
      return ridge_solve(A, y, cfg.lambda);
    case Variant::Huber:
      return irls_fit(A, y, KernelSpec::huber(), cfg.solver).weights;
    case Variant::Cauchy:
      return irls_fit(A, y, KernelSpec::cauchy(), cfg.solver).weights;
    case Variant::Welsch:
      return irls_fit(A, y, KernelSpec::welsch(), cfg.solver).weights;
    case Variant::Arbls:
      return arbls_fit(A, y, cfg.adaptive).weights;
  }
  throw std::logic_error("fit_variant: unhandled variant");
}

VariantSummary summarize_rows(Variant variant, const std::vector<TrialRow>& rows) {
  VariantSummary s;
  s.variant = variant;
  std::vector<double> r, m, t;
  for (const auto& row : rows)
    if (row.variant == variant) {
      r.push_back(row.rmse);
      m.push_back(row.mae);
      t.push_back(row.seconds);
    }
  const double n = static_cast<double>(r.size());
  auto mean = [n](const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc / n;
  };
  auto stddev = [n](const std::vector<double>& v, double mu) {
    if (n < 2) return 0.0;
    double acc = 0.0;
    for (double x : v) acc += (x - mu) * (x - mu);
    return std::sqrt(acc / (n - 1.0));
  };
  s.rmse_mean = mean(r);
  s.rmse_std = stddev(r, s.rmse_mean);
  s.mae_mean = mean(m);
  s.mae_std = stddev(m, s.mae_mean);
  s.time_mean = mean(t);
  return s;
}

}  // namespace

ExperimentReport run_experiment_on(const Dataset& ds, const ExperimentConfig& effective) {
  effective.validate();

  ExperimentConfig cfg = effective;
  cfg.solver.lambda = cfg.lambda;
  cfg.adaptive.solver.lambda = cfg.lambda;

  StructureChoice structure;
  if (cfg.fixed_structure) {
    structure = *cfg.fixed_structure;
  } else {
    // Searched once on clean data against the plain-ridge criterion, then
    // frozen across variants and trials.
    const auto [search_train, search_test] =
        split(ds, cfg.split_fraction, mix_seed(cfg.master_seed, 101));
    const auto [norm_train, params] = normalize(search_train);
    (void)search_test;
    const NetworkConfig best = structure_search(norm_train, cfg);
    structure = {best.feature_groups, best.nodes_per_group, best.enhancement_groups,
                 best.enhancement_nodes};
  }

  ExperimentReport report;
  report.dataset = ds.name;
  report.noise_label = cfg.noise.label();
  report.trials = cfg.trials;
  report.structure = structure;

  for (int trial = 0; trial < cfg.trials; ++trial) {
    const auto [train_raw, test_raw] =
        split(ds, cfg.split_fraction, mix_seed(cfg.master_seed, kSeedTrialSplit + trial));
    const auto [train, params] = normalize(train_raw);
    const Dataset test = params.apply(test_raw);

    RealVector y_train = train.targets;
    const std::uint64_t noise_seed = mix_seed(cfg.master_seed, kSeedTrialNoise + trial);
    switch (cfg.noise.kind) {
      case NoiseMode::Kind::None:
        break;
      case NoiseMode::Kind::Outlier: {
        OutlierSpec spec;
        spec.proportion = cfg.noise.proportion;
        spec.low = 0.0;
        spec.high = 1.0;
        spec.seed = noise_seed;
        y_train = inject_outliers(y_train, spec).contaminated;
        break;
      }
      case NoiseMode::Kind::Stable: {
        StableSpec spec;
        spec.dispersion = cfg.noise.dispersion;
        spec.exponent = cfg.noise.exponent;
        spec.seed = noise_seed;
        y_train = add_stable_noise(y_train, spec);
        break;
      }
    }

    NetworkConfig net;
    net.feature_groups = structure.n;
    net.nodes_per_group = structure.q;
    net.enhancement_groups = structure.m;
    net.enhancement_nodes = structure.p;
    net.lambda = cfg.lambda;
    net.seed = mix_seed(cfg.master_seed, kSeedTrialNodes + trial);
    net.allow_out_of_range = true;

    const FrozenNodes nodes = init_nodes(static_cast<int>(ds.dims()), net);
    const RealMatrix a_train = build_hidden(train.features, nodes);
    const RealMatrix a_test = build_hidden(test.features, nodes);

    for (Variant variant : cfg.variants) {
      const auto start = std::chrono::steady_clock::now();
      const RealMatrix w = fit_variant(variant, a_train, y_train, cfg);
      const double secs = elapsed_seconds(start);
      const RealVector pred = a_test * w;
      TrialRow row;
      row.trial = trial;
      row.variant = variant;
      row.rmse = rmse(test.targets, pred);
      row.mae = mae(test.targets, pred);
      row.seconds = secs;
      report.rows.push_back(row);
    }
  }

  for (Variant variant : cfg.variants)
    report.summary.push_back(summarize_rows(variant, report.rows));
  return report;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const Dataset ds = load_csv(cfg.data_path, cfg.target_column, cfg.has_header);
  return run_experiment_on(ds, cfg);
}

namespace {

std::string format_pm(double mean, double std, double scale) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(2) << mean * scale << " +/- " << std * scale;
  return out.str();
}

}  // namespace

std::string render_report(const ExperimentReport& report, ReportFormat format) {
  if (format == ReportFormat::Json) {
    json j;
    j["dataset"] = report.dataset;
    j["noise"] = report.noise_label;
    j["trials"] = report.trials;
    j["structure"] = {{"n", report.structure.n},
                      {"q", report.structure.q},
                      {"m", report.structure.m},
                      {"p", report.structure.p}};
    j["rows"] = json::array();
    for (const auto& r : report.rows)
      j["rows"].push_back({{"trial", r.trial},
                           {"variant", to_string(r.variant)},
                           {"rmse", r.rmse},
                           {"mae", r.mae},
                           {"seconds", r.seconds}});
    j["summary"] = json::array();
    for (const auto& s : report.summary)
      j["summary"].push_back({{"variant", to_string(s.variant)},
                              {"rmse_mean", s.rmse_mean},
                              {"rmse_std", s.rmse_std},
                              {"mae_mean", s.mae_mean},
                              {"mae_std", s.mae_std},
                              {"time_mean_s", s.time_mean}});
    return j.dump(2) + "\n";
  }

  if (format == ReportFormat::Csv) {
    std::ostringstream out;
    out << "dataset,noise,variant,rmse_mean,rmse_std,mae_mean,mae_std,time_mean_s\n";
    out << std::setprecision(12);
    for (const auto& s : report.summary)
      out << report.dataset << ',' << report.noise_label << ',' << to_string(s.variant) << ','
          << s.rmse_mean << ',' << s.rmse_std << ',' << s.mae_mean << ',' << s.mae_std << ','
          << s.time_mean << '\n';
    return out.str();
  }

  // Plain table; RMSE/MAE shown x10^-2, best RMSE starred.
  std::ostringstream out;
  out << "dataset: " << report.dataset << "   noise: " << report.noise_label
      << "   trials: " << report.trials << "   structure (n,q,m,p): " << report.structure.n
      << "," << report.structure.q << "," << report.structure.m << "," << report.structure.p
      << "\n";
  out << std::left << std::setw(10) << "variant" << std::setw(22) << "RMSE (x10^-2)"
      << std::setw(22) << "MAE (x10^-2)" << std::setw(12) << "time (s)" << "\n";
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : report.summary) best = std::min(best, s.rmse_mean);
  for (const auto& s : report.summary) {
    const bool starred = s.rmse_mean == best;
    out << std::left << std::setw(10) << (to_string(s.variant) + (starred ? "*" : ""))
        << std::setw(22) << format_pm(s.rmse_mean, s.rmse_std, 100.0) << std::setw(22)
        << format_pm(s.mae_mean, s.mae_std, 100.0) << std::fixed << std::setprecision(4)
        << s.time_mean << "\n";
  }
  return out.str();
}

ExperimentReport report_from_json(const std::string& json_text) {
  const json j = json::parse(json_text);
  ExperimentReport report;
  report.dataset = j.at("dataset").get<std::string>();
  report.noise_label = j.at("noise").get<std::string>();
  report.trials = j.at("trials").get<int>();
  report.structure.n = j.at("structure").at("n").get<int>();
  report.structure.q = j.at("structure").at("q").get<int>();
  report.structure.m = j.at("structure").at("m").get<int>();
  report.structure.p = j.at("structure").at("p").get<int>();
  for (const auto& r : j.at("rows")) {
    TrialRow row;
    row.trial = r.at("trial").get<int>();
    row.variant = variant_from_string(r.at("variant").get<std::string>());
    row.rmse = r.at("rmse").get<double>();
    row.mae = r.at("mae").get<double>();
    row.seconds = r.at("seconds").get<double>();
    report.rows.push_back(row);
  }
  for (const auto& s : j.at("summary")) {
    VariantSummary summary;
    summary.variant = variant_from_string(s.at("variant").get<std::string>());
    summary.rmse_mean = s.at("rmse_mean").get<double>();
    summary.rmse_std = s.at("rmse_std").get<double>();
    summary.mae_mean = s.at("mae_mean").get<double>();
    summary.mae_std = s.at("mae_std").get<double>();
    summary.time_mean = s.at("time_mean_s").get<double>();
    report.summary.push_back(summary);
  }
  return report;
}

}  // namespace arbls
