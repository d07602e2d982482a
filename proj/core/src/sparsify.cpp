#include "val/sparsify.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace val {

ScoreVariant parse_variant(const std::string& name) {
  if (name == "paper") return ScoreVariant::paper;
  if (name == "ted") return ScoreVariant::ted;
  throw ConfigError("unknown score variant '" + name + "' (expected paper|ted)");
}

std::string variant_name(ScoreVariant v) {
  return v == ScoreVariant::paper ? "paper" : "ted";
}

namespace {

// Scores into a caller-provided buffer so the selection loop does not
// allocate per round. Ascending single-accumulator sums keep the values
// bit-identical to a naive rescoring pass.
void scores_into(const Matrix& K, double mu, ScoreVariant variant,
                 const std::vector<char>& excluded, Vector* out) {
  const int n = static_cast<int>(K.rows());
  const double ninf = -std::numeric_limits<double>::infinity();
  for (int l = 0; l < n; ++l) {
    if (excluded[static_cast<size_t>(l)]) {
      (*out)(l) = ninf;
      continue;
    }
    // s = K(l,:)K(:,l); K stays bitwise symmetric through deflation, so
    // reading the contiguous column gives the same bits as the row-column
    // product while staying cache-friendly.
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += K(j, l) * K(j, l);
    const double denom = K(l, l) + mu;
    (*out)(l) = (variant == ScoreVariant::paper) ? s * s / denom : s / denom;
  }
}

}  // namespace

Vector confidence_scores(const KernelMatrix& K, double mu, ScoreVariant variant,
                         const SubsetIndices& excluded) {
  if (!(mu > 0)) throw ConfigError("confidence_scores: mu must be > 0");
  const int n = K.n();
  excluded.validate(n);
  std::vector<char> mask(static_cast<size_t>(n), 0);
  for (int i : excluded.indices) mask[static_cast<size_t>(i)] = 1;
  Vector out(n);
  scores_into(K.entries, mu, variant, mask, &out);
  return out;
}

void deflate_in_place(Matrix& K, int selected, double mu) {
  const int n = static_cast<int>(K.rows());
  if (selected < 0 || selected >= n) throw ShapeError("deflate: index out of range");
  if (!(mu > 0)) throw ConfigError("deflate: mu must be > 0");
  const Vector v = K.col(selected);
  const double denom = K(selected, selected) + mu;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) K(i, j) -= v(i) * v(j) / denom;
}

KernelMatrix deflate(const KernelMatrix& K, int selected, double mu) {
  KernelMatrix out = K;
  deflate_in_place(out.entries, selected, mu);
  return out;
}

SubsetIndices greedy_select(Matrix K, double mu, int count, ScoreVariant variant) {
  const int n = static_cast<int>(K.rows());
  if (!(mu > 0)) throw ConfigError("greedy_select: mu must be > 0");
  if (count < 0 || count > n) throw ConfigError("greedy_select: count out of range");

  std::vector<char> excluded(static_cast<size_t>(n), 0);
  Vector scores(n);
  SubsetIndices picked;
  picked.indices.reserve(static_cast<size_t>(count));
  for (int t = 0; t < count; ++t) {
    scores_into(K, mu, variant, excluded, &scores);
    int best = -1;
    double best_score = -std::numeric_limits<double>::infinity();
    for (int l = 0; l < n; ++l) {
      if (excluded[static_cast<size_t>(l)]) continue;
      if (best < 0 || scores(l) > best_score) {
        best = l;
        best_score = scores(l);
      }
    }
    picked.indices.push_back(best);
    excluded[static_cast<size_t>(best)] = 1;
    deflate_in_place(K, best, mu);
  }
  return picked;
}

SubsetIndices sparsify_halve(const Matrix& X, const KernelSpec& spec,
                             const SparsifyParams& params) {
  params.validate();
  const int n = static_cast<int>(X.rows());
  if (n < 2) throw ShapeError("sparsify_halve: need n >= 2");
  const int count = static_cast<int>(std::floor(n * params.target_fraction));
  KernelMatrix K = kernel_matrix(X, spec);
  return greedy_select(std::move(K.entries), params.mu, count, params.variant);
}

}  // namespace val
