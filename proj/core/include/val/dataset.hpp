#ifndef VAL_DATASET_HPP
#define VAL_DATASET_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "val/types.hpp"

namespace val {

/// A labeled point set. Immutable by convention after construction; safe to
/// share across threads. Labels are class ids re-encoded to 0..c-1 in
/// first-appearance order, so any dataset produced by this module survives a
/// save/load round trip unchanged.
struct Dataset {
  Matrix features;          // n x m
  std::vector<int> labels;  // length n, values in [0, num_classes)
  std::string name;

  int n() const { return static_cast<int>(features.rows()); }
  int m() const { return static_cast<int>(features.cols()); }
  int num_classes() const;

  /// Throws unless the structural invariants hold (n,m >= 1, finite
  /// features, labels dense in [0, c)).
  void validate() const;
};

/// Load a CSV file. `label_column` selects the label column either by
/// 1-based index (a purely numeric string) or by header name; the empty
/// string means the last column. A header row is auto-detected: the first
/// row is a header iff any of its non-label cells fails to parse as a
/// number. Feature cells must be finite numbers; label cells may be any
/// token and are encoded by first appearance.
Dataset load_csv(const std::string& path, const std::string& label_column = "");

/// Write `f1..fm,label` with floats at 17 significant digits, so reloading
/// reproduces the dataset exactly.
void save_csv(const Dataset& ds, const std::string& path);

enum class SyntheticShape { blobs, rings, spirals };

SyntheticShape parse_shape(const std::string& name);
std::string shape_name(SyntheticShape shape);

/// Deterministic 2-D synthetic generator: `classes * per_class` points,
/// class-major order, balanced labels. `separation` controls class spacing
/// (blob centers / ring radii / spiral arm scale), `noise_std` the isotropic
/// Gaussian jitter. Identical arguments give bit-identical datasets.
Dataset gen_synthetic(SyntheticShape shape, int classes, int per_class,
                      double separation, double noise_std, std::uint64_t seed);

/// The only sanctioned path from a strategy to ground-truth labels. Counts
/// unique queried indices against an optional budget; re-querying a known
/// index is free. Single-writer: callers must serialize access externally.
class LabelOracle {
 public:
  explicit LabelOracle(const Dataset& ds,
                       std::optional<long> budget = std::nullopt);

  /// Returns the true label of `index`, charging the budget if the index
  /// has not been queried before. Throws BudgetExceeded when a fresh index
  /// would push past the budget.
  int query(int index);

  long queries_used() const { return static_cast<long>(seen_.size()); }
  std::optional<long> budget() const { return budget_; }
  const Dataset& dataset() const { return *ds_; }

 private:
  const Dataset* ds_;
  std::optional<long> budget_;
  std::unordered_set<int> seen_;
};

}  // namespace val

#endif  // VAL_DATASET_HPP
