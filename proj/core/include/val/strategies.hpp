#ifndef VAL_STRATEGIES_HPP
#define VAL_STRATEGIES_HPP

#include <cstdint>
#include <string>

#include "val/classifier.hpp"
#include "val/dataset.hpp"
#include "val/represent.hpp"
#include "val/sparsify.hpp"

namespace val {

enum class StrategyKind { val, random, ted, margin };

StrategyKind parse_strategy(const std::string& name);
std::string strategy_name(StrategyKind kind);

struct StrategyConfig {
  StrategyKind name = StrategyKind::val;
  int budget = 1;
  KernelSpec kernel;
  SparsifyParams sparsify;
  EmParams em;
  double lambda = 1e-3;  // margin's evaluation classifier
  std::uint64_t seed = 0;
};

/// One labeled point per class, granted to every strategy before any
/// budgeted query is made.
struct SeedSet {
  std::vector<int> indices;  // indices[c] seeds class c
  std::vector<int> labels;
};

/// Lowest dataset index of each class, in class order.
SeedSet seed_set_lowest_index(const Dataset& ds);

/// k distinct uniform indices from [0, n), in draw order.
SubsetIndices select_random(int n, int k, std::uint64_t seed);

/// First k picks of the sequential design loop (variant `ted`, no local
/// representation stage). Greedy, so select_ted(X, k) is a prefix of
/// select_ted(X, k+1).
SubsetIndices select_ted(const Matrix& X, int k, const KernelSpec& spec, double mu);

/// Uncertainty baseline: k rounds of "train on the labeled set, query the
/// unlabeled point with the smallest margin" (ties to the lowest index).
/// Charges exactly k oracle queries; the seed labels are free.
SubsetIndices select_margin(const Dataset& ds, LabelOracle& oracle,
                            const SeedSet& seeds, int k, const KernelSpec& spec,
                            double lambda);

/// The volume-based pipeline: Gram matrix, sequential sparsification to
/// half the pool, local center representation with k centers, snap to data.
/// Touches no labels and is deterministic given (data, config).
SubsetIndices select_val(const Dataset& ds, int k, const StrategyConfig& config);

/// The representation stage of select_val, split out so a harness can reuse
/// one sparsified pool across budgets and repeats. Returns dataset-level
/// indices.
SubsetIndices val_representation_stage(const Matrix& X, const SubsetIndices& pool,
                                       int k, const EmParams& em);

}  // namespace val

#endif  // VAL_STRATEGIES_HPP
