#include "val/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Cholesky>

namespace val {

RlscModel train_rlsc(const Matrix& X, const std::vector<int>& y,
                     const KernelSpec& spec, double lambda, int num_classes) {
  if (!(lambda > 0)) throw ConfigError("train_rlsc: lambda must be > 0");
  const int t = static_cast<int>(X.rows());
  if (t < 1) throw ShapeError("train_rlsc: empty training set");
  if (static_cast<int>(y.size()) != t)
    throw ShapeError("train_rlsc: label count mismatch");

  int c = num_classes;
  if (c < 0) {
    c = 0;
    for (int l : y) c = std::max(c, l + 1);
  }
  for (int l : y)
    if (l < 0 || l >= c) throw ShapeError("train_rlsc: label outside [0, c)");

  Matrix A = kernel_matrix(X, spec).entries;
  A.diagonal().array() += lambda;

  Matrix targets(t, c);
  for (int j = 0; j < c; ++j)
    for (int i = 0; i < t; ++i)
      targets(i, j) = (y[static_cast<size_t>(i)] == j) ? 1.0 : -1.0;

  Eigen::LLT<Matrix> llt(A);
  if (llt.info() != Eigen::Success)
    throw DomainError("train_rlsc: kernel system not positive definite");
  Matrix weights = llt.solve(targets);
  // One refinement step keeps the residual small even for tiny lambda.
  weights += llt.solve(targets - A * weights);
  if (!weights.allFinite())
    throw DomainError("train_rlsc: non-finite dual weights");

  RlscModel model;
  model.support_points = X;
  model.dual_weights = std::move(weights);
  model.spec = spec;
  model.lambda = lambda;
  return model;
}

Prediction predict(const RlscModel& model, const Matrix& X) {
  if (X.cols() != model.support_points.cols())
    throw ShapeError("predict: dimension mismatch");
  const int q = static_cast<int>(X.rows());
  const int t = static_cast<int>(model.support_points.rows());
  const int c = model.num_classes();

  Prediction pred;
  pred.labels.resize(static_cast<size_t>(q));
  pred.margins.resize(q);
  pred.decision_values.resize(q, c);

  for (int i = 0; i < q; ++i) {
    Vector kx(t);
    for (int j = 0; j < t; ++j)
      kx(j) = kernel_eval(model.spec, model.support_points.row(j), X.row(i));
    const Vector f = model.dual_weights.transpose() * kx;
    pred.decision_values.row(i) = f.transpose();

    int best = 0;
    for (int j = 1; j < c; ++j)
      if (f(j) > f(best)) best = j;
    pred.labels[static_cast<size_t>(i)] = best;

    if (c <= 2) {
      // One-vs-rest binary columns are exact negations, so |f_0| is the
      // distance to the decision boundary for either class.
      pred.margins(i) = std::abs(f(0));
    } else {
      double second = -std::numeric_limits<double>::infinity();
      for (int j = 0; j < c; ++j)
        if (j != best && f(j) > second) second = f(j);
      pred.margins(i) = f(best) - second;
    }
  }
  return pred;
}

std::vector<int> knn_predict(const Matrix& Xl, const std::vector<int>& yl,
                             const Matrix& X, int k) {
  const int t = static_cast<int>(Xl.rows());
  if (static_cast<int>(yl.size()) != t) throw ShapeError("knn_predict: label count mismatch");
  if (k < 1 || k > t) throw ConfigError("knn_predict: k must be in [1, t]");
  if (X.cols() != Xl.cols()) throw ShapeError("knn_predict: dimension mismatch");

  int c = 0;
  for (int l : yl) c = std::max(c, l + 1);

  std::vector<int> out(static_cast<size_t>(X.rows()));
  std::vector<std::pair<double, int>> dist(static_cast<size_t>(t));
  for (int i = 0; i < X.rows(); ++i) {
    for (int j = 0; j < t; ++j)
      dist[static_cast<size_t>(j)] = {(X.row(i) - Xl.row(j)).squaredNorm(), j};
    std::partial_sort(dist.begin(), dist.begin() + k, dist.end());
    std::vector<int> votes(static_cast<size_t>(c), 0);
    for (int j = 0; j < k; ++j)
      ++votes[static_cast<size_t>(yl[static_cast<size_t>(dist[static_cast<size_t>(j)].second)])];
    int best = 0;
    for (int j = 1; j < c; ++j)
      if (votes[static_cast<size_t>(j)] > votes[static_cast<size_t>(best)]) best = j;
    out[static_cast<size_t>(i)] = best;
  }
  return out;
}

double error_rate(const std::vector<int>& predicted, const std::vector<int>& truth) {
  if (predicted.size() != truth.size()) throw ShapeError("error_rate: length mismatch");
  if (predicted.empty()) throw ShapeError("error_rate: empty input");
  long mismatches = 0;
  for (size_t i = 0; i < truth.size(); ++i)
    if (predicted[i] != truth[i]) ++mismatches;
  return static_cast<double>(mismatches) / static_cast<double>(truth.size());
}

}  // namespace val
