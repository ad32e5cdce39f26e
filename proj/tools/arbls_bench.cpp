// Benchmark harness: load a CSV dataset, contaminate the training targets,
// fit the BLS variants, and report test RMSE/MAE over seeded trials.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "arbls/experiment.hpp"

namespace {

arbls::Range parse_range(const std::string& text, const arbls::Range& fallback) {
  if (text.empty()) return fallback;
  arbls::Range r;
  std::istringstream in(text);
  char sep;
  if (!(in >> r.lo >> sep >> r.hi >> sep >> r.step))
    throw CLI::ValidationError("range must be LO:HI:STEP");
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Broad learning system regression benchmark (BLS, M-BLS, AR-BLS)"};
  app.set_config("--config", "", "Key-value config file; flags override file entries");

  std::string data_path;
  std::string target = "0";
  std::string variants_text = "bls,huber,cauchy,welsch,arbls";
  std::string noise_text = "none";
  std::string format_text = "plain";
  std::string structure_text;
  std::string out_path;
  std::string n_range_text, q_range_text, m_range_text, p_range_text;
  arbls::ExperimentConfig cfg;
  bool no_header = false;

  app.add_option("--data", data_path, "CSV dataset path")->required();
  app.add_option("--target", target, "Target column name or 0-based index");
  app.add_flag("--no-header", no_header, "Treat the first CSV line as data");
  app.add_option("--variants", variants_text, "Comma list from bls,huber,cauchy,welsch,arbls");
  app.add_option("--noise", noise_text, "none | outlier:P | stable:RHO,MU");
  app.add_option("--trials", cfg.trials, "Repetitions with derived seeds")->check(CLI::PositiveNumber);
  app.add_option("--split", cfg.split_fraction, "Train fraction in (0,1)");
  app.add_option("--seed", cfg.master_seed, "Master seed");
  app.add_option("--lambda", cfg.lambda, "Ridge regularization coefficient");
  app.add_option("--format", format_text, "plain | csv | json");
  app.add_option("--structure", structure_text, "n,q,m,p (skips the structure search)");
  app.add_option("--n-range", n_range_text, "Feature-group search range LO:HI:STEP");
  app.add_option("--q-range", q_range_text, "Nodes-per-group search range LO:HI:STEP");
  app.add_option("--m-range", m_range_text, "Enhancement-group search range LO:HI:STEP");
  app.add_option("--p-range", p_range_text, "Enhancement-node search range LO:HI:STEP");
  app.add_option("--out", out_path, "Write the report to a file instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.data_path = data_path;
    cfg.target_column = target;
    cfg.has_header = !no_header;
    cfg.noise = arbls::NoiseMode::parse(noise_text);

    cfg.variants.clear();
    std::istringstream vs(variants_text);
    std::string item;
    while (std::getline(vs, item, ',')) {
      if (!item.empty()) cfg.variants.push_back(arbls::variant_from_string(item));
    }

    if (!structure_text.empty()) {
      arbls::StructureChoice s;
      char sep;
      std::istringstream in(structure_text);
      if (!(in >> s.n >> sep >> s.q >> sep >> s.m >> sep >> s.p))
        throw std::invalid_argument("--structure must be n,q,m,p");
      cfg.fixed_structure = s;
    }
    cfg.n_range = parse_range(n_range_text, cfg.n_range);
    cfg.q_range = parse_range(q_range_text, cfg.q_range);
    cfg.m_range = parse_range(m_range_text, cfg.m_range);
    cfg.p_range = parse_range(p_range_text, cfg.p_range);

    arbls::ReportFormat format = arbls::ReportFormat::Plain;
    if (format_text == "csv") format = arbls::ReportFormat::Csv;
    else if (format_text == "json") format = arbls::ReportFormat::Json;
    else if (format_text != "plain")
      throw std::invalid_argument("--format must be plain, csv, or json");

    const arbls::ExperimentReport report = arbls::run_experiment(cfg);
    const std::string text = arbls::render_report(report, format);

    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(out_path);
      if (!out) throw std::runtime_error("cannot write output file: " + out_path);
      out << text;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
