#include "val/represent.hpp"

#include <cmath>
#include <limits>

#include "val/rng.hpp"

namespace val {

std::vector<int> assign(const Matrix& X, const Matrix& centers) {
  if (X.cols() != centers.cols()) throw ShapeError("assign: dimension mismatch");
  if (centers.rows() < 1) throw ShapeError("assign: need at least one center");
  const int n = static_cast<int>(X.rows());
  const int k = static_cast<int>(centers.rows());
  std::vector<int> out(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    int best = 0;
    double best_d = (X.row(i) - centers.row(0)).squaredNorm();
    for (int c = 1; c < k; ++c) {
      const double d = (X.row(i) - centers.row(c)).squaredNorm();
      if (d < best_d) {
        best = c;
        best_d = d;
      }
    }
    out[static_cast<size_t>(i)] = best;
  }
  return out;
}

Matrix update_centers(const Matrix& X, const std::vector<int>& assignments,
                      const Matrix& previous_centers) {
  const int n = static_cast<int>(X.rows());
  const int k = static_cast<int>(previous_centers.rows());
  if (static_cast<int>(assignments.size()) != n)
    throw ShapeError("update_centers: assignment length mismatch");
  Matrix sums = Matrix::Zero(k, X.cols());
  std::vector<long> counts(static_cast<size_t>(k), 0);
  for (int i = 0; i < n; ++i) {
    const int c = assignments[static_cast<size_t>(i)];
    if (c < 0 || c >= k) throw ShapeError("update_centers: assignment out of range");
    sums.row(c) += X.row(i);
    ++counts[static_cast<size_t>(c)];
  }
  Matrix centers(k, X.cols());
  for (int c = 0; c < k; ++c) {
    if (counts[static_cast<size_t>(c)] > 0)
      centers.row(c) = sums.row(c) / static_cast<double>(counts[static_cast<size_t>(c)]);
    else
      centers.row(c) = previous_centers.row(c);
  }
  return centers;
}

double representation_loss(const Matrix& X, const std::vector<int>& assignments,
                           const Matrix& centers) {
  if (static_cast<int>(assignments.size()) != X.rows())
    throw ShapeError("representation_loss: assignment length mismatch");
  double loss = 0.0;
  for (int i = 0; i < X.rows(); ++i)
    loss += (X.row(i) - centers.row(assignments[static_cast<size_t>(i)])).squaredNorm();
  return loss;
}

namespace {

// Re-seed each empty cluster at the point farthest from its assigned
// center, lowest index on ties, never using the same point twice.
void repair_empty_clusters(const Matrix& X, const std::vector<int>& assignments,
                           Matrix* centers) {
  const int k = static_cast<int>(centers->rows());
  const int n = static_cast<int>(X.rows());
  std::vector<long> counts(static_cast<size_t>(k), 0);
  for (int a : assignments) ++counts[static_cast<size_t>(a)];

  std::vector<char> used(static_cast<size_t>(n), 0);
  for (int c = 0; c < k; ++c) {
    if (counts[static_cast<size_t>(c)] > 0) continue;
    int far = -1;
    double far_d = -1.0;
    for (int i = 0; i < n; ++i) {
      if (used[static_cast<size_t>(i)]) continue;
      const double d =
          (X.row(i) - centers->row(assignments[static_cast<size_t>(i)])).squaredNorm();
      if (d > far_d) {
        far = i;
        far_d = d;
      }
    }
    if (far < 0) break;  // fewer points than empty clusters
    centers->row(c) = X.row(far);
    used[static_cast<size_t>(far)] = 1;
  }
}

}  // namespace

Representation em_representation(const Matrix& X, int k, const EmParams& params) {
  params.validate();
  const int n = static_cast<int>(X.rows());
  if (k < 1 || k > n)
    throw ConfigError("em_representation: need 1 <= k <= n, got k=" + std::to_string(k) +
                      ", n=" + std::to_string(n));

  Representation rep;
  if (params.init == EmInit::given) {
    if (params.given_centers.rows() != k || params.given_centers.cols() != X.cols())
      throw ShapeError("em_representation: given_centers must be k x m");
    rep.centers = params.given_centers;
  } else {
    // Seeded sampling from the pool, weighted by squared distance to the
    // nearest already-chosen center. Plain uniform draws routinely land two
    // centers in one tight cluster, a local optimum the alternation cannot
    // leave; distance weighting keeps the initialization spread out while
    // staying label-free and deterministic per seed.
    Rng rng(params.seed);
    rep.centers.resize(k, X.cols());
    std::vector<char> chosen(static_cast<size_t>(n), 0);
    const int first = static_cast<int>(rng.uniform_int(0, n - 1));
    rep.centers.row(0) = X.row(first);
    chosen[static_cast<size_t>(first)] = 1;
    Vector d2(n);
    for (int i = 0; i < n; ++i) d2(i) = (X.row(i) - X.row(first)).squaredNorm();
    for (int c = 1; c < k; ++c) {
      double total = 0.0;
      for (int i = 0; i < n; ++i) total += d2(i);
      int pick = -1;
      if (total > 0) {
        const double threshold = rng.uniform() * total;
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
          acc += d2(i);
          if (acc >= threshold && !chosen[static_cast<size_t>(i)]) {
            pick = i;
            break;
          }
        }
      }
      if (pick < 0) {  // all remaining mass on chosen/duplicate points
        for (int i = 0; i < n; ++i)
          if (!chosen[static_cast<size_t>(i)]) {
            pick = i;
            break;
          }
      }
      rep.centers.row(c) = X.row(pick);
      chosen[static_cast<size_t>(pick)] = 1;
      for (int i = 0; i < n; ++i)
        d2(i) = std::min(d2(i), (X.row(i) - X.row(pick)).squaredNorm());
    }
  }

  for (int iter = 1; iter <= params.max_iter; ++iter) {
    rep.assignments = assign(X, rep.centers);
    const double before = representation_loss(X, rep.assignments, rep.centers);
    rep.loss_trace.push_back(before);

    Matrix updated = update_centers(X, rep.assignments, rep.centers);
    repair_empty_clusters(X, rep.assignments, &updated);
    // Re-seeded centers are empty in the current partition, so they do not
    // contribute to this loss value.
    const double after = representation_loss(X, rep.assignments, updated);
    rep.loss_trace.push_back(after);
    rep.centers = std::move(updated);
    rep.iterations = iter;
    if (std::abs(before - after) <= params.tol) {
      rep.converged = true;
      break;
    }
  }
  return rep;
}

SubsetIndices snap_to_data(const Matrix& centers, const Matrix& X) {
  if (centers.cols() != X.cols()) throw ShapeError("snap_to_data: dimension mismatch");
  const int k = static_cast<int>(centers.rows());
  const int n = static_cast<int>(X.rows());
  if (k > n) throw ConfigError("snap_to_data: more centers than data points");

  std::vector<char> used(static_cast<size_t>(n), 0);
  SubsetIndices out;
  out.indices.reserve(static_cast<size_t>(k));
  for (int c = 0; c < k; ++c) {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      if (used[static_cast<size_t>(i)]) continue;
      const double d = (centers.row(c) - X.row(i)).squaredNorm();
      if (d < best_d) {
        best = i;
        best_d = d;
      }
    }
    used[static_cast<size_t>(best)] = 1;
    out.indices.push_back(best);
  }
  return out;
}

}  // namespace val
