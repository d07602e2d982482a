// valkit: sample-selection strategies, geometry verification, and the
// error-rate-curve experiment runner behind one command line.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <string>

#include "val/geometry.hpp"
#include "val/harness.hpp"

namespace {

int cmd_run(const std::string& config_path) {
  const val::ExperimentConfig config = val::parse_config_file(config_path);
  const val::ErrorCurve curve = val::run_experiment(config);
  const std::string base = config.output_dir.empty() ? "." : config.output_dir;
  val::emit_csv(curve, base + "/curve.csv");
  val::emit_svg(curve, base + "/curve.svg");
  std::cout << "wrote " << base << "/curve.csv and " << base << "/curve.svg ("
            << curve.rows.size() << " rows)\n";
  return 0;
}

int cmd_select(const std::string& strategy, int k, const std::string& data_path,
               const std::string& label_col, double mu, double gamma,
               double lambda, double target_fraction,
               const std::string& variant, std::uint64_t seed) {
  const val::Dataset ds = val::load_csv(data_path, label_col);

  val::StrategyConfig config;
  config.name = val::parse_strategy(strategy);
  config.budget = k;
  config.kernel = gamma > 0 ? val::make_rbf(gamma)
                            : val::make_rbf(val::median_heuristic_gamma(ds.features));
  config.sparsify.mu = mu;
  config.sparsify.target_fraction = target_fraction;
  config.sparsify.variant = val::parse_variant(variant);
  config.lambda = lambda;
  config.seed = seed;

  val::SubsetIndices picked;
  switch (config.name) {
    case val::StrategyKind::random:
      picked = val::select_random(ds.n(), k, seed);
      break;
    case val::StrategyKind::ted:
      picked = val::select_ted(ds.features, k, config.kernel, mu);
      break;
    case val::StrategyKind::margin: {
      val::LabelOracle oracle(ds, k);
      const val::SeedSet seeds = val::seed_set_lowest_index(ds);
      picked = val::select_margin(ds, oracle, seeds, k, config.kernel, lambda);
      break;
    }
    case val::StrategyKind::val:
      picked = val::select_val(ds, k, config);
      break;
  }
  for (int i : picked.indices) std::cout << i << "\n";
  return 0;
}

int cmd_gen_data(const std::string& shape, int classes, int per_class,
                 double separation, double noise, std::uint64_t seed,
                 const std::string& out_path) {
  const val::Dataset ds = val::gen_synthetic(val::parse_shape(shape), classes,
                                             per_class, separation, noise, seed);
  val::save_csv(ds, out_path);
  std::cout << "wrote " << out_path << " (" << ds.n() << " x " << ds.m() << ", "
            << ds.num_classes() << " classes)\n";
  return 0;
}

int cmd_verify_theory(int trials, std::uint64_t seed, const std::string& out_path) {
  const std::vector<val::TheoremReport> reports = val::verify_theorems(trials, seed);
  if (out_path.empty()) {
    val::write_reports_csv(reports, std::cout);
  } else {
    std::ofstream out(out_path);
    if (!out) throw val::IoError("cannot write " + out_path);
    val::write_reports_csv(reports, out);
    std::cout << "wrote " << out_path << "\n";
  }
  long violations = 0;
  for (const val::TheoremReport& r : reports) violations += r.violations;
  return violations == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"volume-based active learning toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  CLI::App* run = app.add_subcommand("run", "execute an experiment config");
  run->add_option("--config", config_path, "experiment config file")->required();

  std::string strategy = "val", data_path, label_col;
  std::string variant = "paper";
  int k = 1;
  double mu = 0.1, gamma = 0.0, lambda = 1e-3, target_fraction = 0.5;
  std::uint64_t seed = 0;
  CLI::App* select = app.add_subcommand("select", "print selected indices");
  select->add_option("--strategy", strategy, "val|random|ted|margin")->required();
  select->add_option("--k", k, "number of points to select")->required();
  select->add_option("--data", data_path, "CSV dataset")->required();
  select->add_option("--label-col", label_col, "label column (1-based index or name)");
  select->add_option("--mu", mu, "sparsifier regularizer");
  select->add_option("--gamma", gamma, "rbf gamma (default: median heuristic)");
  select->add_option("--lambda", lambda, "classifier regularizer (margin)");
  select->add_option("--target-fraction", target_fraction, "sparsified pool fraction");
  select->add_option("--variant", variant, "confidence score variant (paper|ted)");
  select->add_option("--seed", seed, "random seed");

  std::string shape = "blobs", out_path;
  int classes = 3, per_class = 50;
  double separation = 10.0, noise = 1.0;
  std::uint64_t gen_seed = 0;
  CLI::App* gen = app.add_subcommand("gen-data", "write a synthetic CSV dataset");
  gen->add_option("--shape", shape, "blobs|rings|spirals")->required();
  gen->add_option("--classes", classes, "number of classes")->required();
  gen->add_option("--per-class", per_class, "points per class")->required();
  gen->add_option("--separation", separation, "class separation");
  gen->add_option("--noise", noise, "noise standard deviation");
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_option("--out", out_path, "output CSV path")->required();

  int trials = 200;
  std::uint64_t vt_seed = 1;
  std::string vt_out;
  CLI::App* verify = app.add_subcommand("verify-theory", "run the geometry checks");
  verify->add_option("--trials", trials, "Monte Carlo trials per check");
  verify->add_option("--seed", vt_seed, "random seed");
  verify->add_option("--out", vt_out, "report CSV path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run) return cmd_run(config_path);
    if (*select)
      return cmd_select(strategy, k, data_path, label_col, mu, gamma, lambda,
                        target_fraction, variant, seed);
    if (*gen)
      return cmd_gen_data(shape, classes, per_class, separation, noise, gen_seed,
                          out_path);
    if (*verify) return cmd_verify_theory(trials, vt_seed, vt_out);
  } catch (const val::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const val::MalformedInput& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
