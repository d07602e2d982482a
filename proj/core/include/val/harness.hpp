#ifndef VAL_HARNESS_HPP
#define VAL_HARNESS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "val/strategies.hpp"

namespace val {

/// Where the experiment data comes from: a CSV file or the synthetic
/// generator.
struct DataSource {
  std::string csv_path;      // empty when generated
  std::string label_column;  // "" = last column
  bool generated = false;
  SyntheticShape shape = SyntheticShape::blobs;
  int classes = 2;
  int per_class = 50;
  double separation = 10.0;
  double noise_std = 1.0;
  std::uint64_t seed = 0;
};

/// Flat key=value experiment description; see parse_config_text for the
/// recognized keys.
struct ExperimentConfig {
  DataSource data;
  KernelSpec kernel;
  bool kernel_gamma_auto = true;  // median-heuristic gamma for rbf
  SparsifyParams sparsify;
  EmParams em;
  double lambda = 1e-3;
  std::vector<StrategyKind> strategies;
  std::vector<int> budgets;  // ascending
  int repeats = 1;
  std::uint64_t master_seed = 0;
  bool scale_features = false;
  bool holdout_only = false;   // evaluate on unqueried points only
  bool record_timing = false;  // measured wall_ms in rows (off: wall_ms = 0)
  std::string output_dir = ".";
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

struct CurveRow {
  std::string strategy;
  long seed = 0;  // repeat ordinal; substream master_seed ^ ordinal
  int budget = 0;
  double error_rate = 0.0;
  long queries_used = 0;
  long wall_ms = 0;
};

/// One row per (strategy, seed, budget), sorted canonically so parallel or
/// reordered execution can never change the artifact.
struct ErrorCurve {
  std::vector<CurveRow> rows;
};

/// Execute every (strategy x repeat x budget) cell: grant the per-class
/// seed labels, run the strategy under a budget-capped oracle, train the
/// evaluation classifier on seeds plus queried points, and score the error
/// rate over the full dataset (or its unqueried complement with
/// holdout_only). Deterministic for a fixed master_seed.
ErrorCurve run_experiment(const ExperimentConfig& config);

/// Columns exactly: strategy,seed,budget,error_rate,queries_used,wall_ms.
/// Floats printed at 17 significant digits so reloading is exact.
void emit_csv(const ErrorCurve& curve, const std::string& path);
ErrorCurve load_curve_csv(const std::string& path);

struct MeanPoint {
  std::string strategy;
  int budget = 0;
  double mean_error = 0.0;
};

/// Arithmetic mean of error_rate over seeds per (strategy, budget); the
/// data series behind emit_svg, exposed for cross-checking.
std::vector<MeanPoint> mean_curve(const ErrorCurve& curve);

/// One polyline per strategy of mean error versus budget, axes labeled
/// "Number of queries" / "Error rate".
void emit_svg(const ErrorCurve& curve, const std::string& path);

}  // namespace val

#endif  // VAL_HARNESS_HPP
