#include "val/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "val/rng.hpp"

namespace val {

StrategyKind parse_strategy(const std::string& name) {
  if (name == "val") return StrategyKind::val;
  if (name == "random") return StrategyKind::random;
  if (name == "ted") return StrategyKind::ted;
  if (name == "margin") return StrategyKind::margin;
  throw ConfigError("unknown strategy '" + name + "' (expected val|random|ted|margin)");
}

std::string strategy_name(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::val: return "val";
    case StrategyKind::random: return "random";
    case StrategyKind::ted: return "ted";
    case StrategyKind::margin: return "margin";
  }
  return "?";
}

SeedSet seed_set_lowest_index(const Dataset& ds) {
  const int c = ds.num_classes();
  SeedSet seeds;
  seeds.indices.assign(static_cast<size_t>(c), -1);
  seeds.labels.resize(static_cast<size_t>(c));
  for (int i = 0; i < ds.n(); ++i) {
    const int label = ds.labels[static_cast<size_t>(i)];
    if (seeds.indices[static_cast<size_t>(label)] < 0) {
      seeds.indices[static_cast<size_t>(label)] = i;
      seeds.labels[static_cast<size_t>(label)] = label;
    }
  }
  for (int label = 0; label < c; ++label)
    if (seeds.indices[static_cast<size_t>(label)] < 0)
      throw ShapeError("class " + std::to_string(label) + " has no points to seed");
  return seeds;
}

SubsetIndices select_random(int n, int k, std::uint64_t seed) {
  if (k < 0 || k > n) throw ConfigError("select_random: need 0 <= k <= n");
  Rng rng(seed);
  return SubsetIndices(sample_without_replacement(n, k, rng));
}

SubsetIndices select_ted(const Matrix& X, int k, const KernelSpec& spec, double mu) {
  const int n = static_cast<int>(X.rows());
  if (k < 0 || k > n) throw ConfigError("select_ted: need 0 <= k <= n");
  KernelMatrix K = kernel_matrix(X, spec);
  return greedy_select(std::move(K.entries), mu, k, ScoreVariant::ted);
}

SubsetIndices select_margin(const Dataset& ds, LabelOracle& oracle,
                            const SeedSet& seeds, int k, const KernelSpec& spec,
                            double lambda) {
  const int n = ds.n();
  if (k < 1) throw ConfigError("select_margin: need k >= 1");

  std::vector<char> labeled(static_cast<size_t>(n), 0);
  std::vector<int> train_idx = seeds.indices;
  std::vector<int> train_labels = seeds.labels;
  for (int i : seeds.indices) labeled[static_cast<size_t>(i)] = 1;

  SubsetIndices queried;
  for (int round = 0; round < k; ++round) {
    Matrix Xl(train_idx.size(), ds.m());
    for (size_t i = 0; i < train_idx.size(); ++i)
      Xl.row(static_cast<long>(i)) = ds.features.row(train_idx[i]);
    const RlscModel model =
        train_rlsc(Xl, train_labels, spec, lambda, ds.num_classes());

    const Prediction pool = predict(model, ds.features);
    int best = -1;
    double best_margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      if (labeled[static_cast<size_t>(i)]) continue;
      if (pool.margins(i) < best_margin) {
        best_margin = pool.margins(i);
        best = i;
      }
    }
    if (best < 0) throw ConfigError("select_margin: pool exhausted before budget");

    const int label = oracle.query(best);
    queried.indices.push_back(best);
    labeled[static_cast<size_t>(best)] = 1;
    train_idx.push_back(best);
    train_labels.push_back(label);
  }
  return queried;
}

SubsetIndices val_representation_stage(const Matrix& X, const SubsetIndices& pool,
                                       int k, const EmParams& em) {
  const Matrix sparse = gather_rows(X, pool);
  const Representation rep = em_representation(sparse, k, em);
  const SubsetIndices local = snap_to_data(rep.centers, sparse);
  SubsetIndices out;
  out.indices.reserve(static_cast<size_t>(k));
  for (int i : local.indices) out.indices.push_back(pool[i]);
  return out;
}

SubsetIndices select_val(const Dataset& ds, int k, const StrategyConfig& config) {
  const int n = ds.n();
  const int pool_size =
      static_cast<int>(std::floor(n * config.sparsify.target_fraction));
  if (k < 1 || k > pool_size)
    throw ConfigError("select_val: budget " + std::to_string(k) +
                      " exceeds the sparsified pool of " + std::to_string(pool_size));
  const SubsetIndices pool =
      sparsify_halve(ds.features, config.kernel, config.sparsify);
  EmParams em = config.em;
  em.seed = config.seed;
  return val_representation_stage(ds.features, pool, k, em);
}

}  // namespace val
