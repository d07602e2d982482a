#ifndef VAL_REPRESENT_HPP
#define VAL_REPRESENT_HPP

#include <cstdint>
#include <vector>

#include "val/types.hpp"

namespace val {

/// State of the alternating center representation: centers, the partition
/// that produced them, and the recorded loss values. The trace holds every
/// loss evaluation in order (before and after each center update), so it is
/// non-increasing end to end; `converged` means the final update improved
/// the loss by at most `tol`.
struct Representation {
  Matrix centers;                // K x m
  std::vector<int> assignments;  // length n', values in [0, K)
  std::vector<double> loss_trace;
  int iterations = 0;
  bool converged = false;
};

enum class EmInit { passive_random, given };

struct EmParams {
  double tol = 1e-9;   // absolute loss-change tolerance
  int max_iter = 300;
  EmInit init = EmInit::passive_random;
  std::uint64_t seed = 0;
  Matrix given_centers;  // only read when init == given

  void validate() const {
    if (tol < 0) throw ConfigError("em tol must be >= 0");
    if (max_iter < 1) throw ConfigError("em max_iter must be >= 1");
  }
};

/// Nearest center per point under squared Euclidean distance; ties go to
/// the lowest center id.
std::vector<int> assign(const Matrix& X, const Matrix& centers);

/// Per-cluster arithmetic means, accumulated in row order for determinism.
/// A cluster with no members keeps its row from `previous_centers`.
Matrix update_centers(const Matrix& X, const std::vector<int>& assignments,
                      const Matrix& previous_centers);

/// Sum over points of squared distance to their assigned center.
double representation_loss(const Matrix& X, const std::vector<int>& assignments,
                           const Matrix& centers);

/// Alternate assign / update_centers until the per-iteration loss
/// improvement drops to `tol` or `max_iter` is hit. Empty clusters are
/// re-seeded at the point currently farthest from its assigned center.
/// Deterministic for a fixed seed.
Representation em_representation(const Matrix& X, int k, const EmParams& params);

/// Replace each center (in order) by its nearest data point, never reusing
/// a point; distance ties go to the lowest index.
SubsetIndices snap_to_data(const Matrix& centers, const Matrix& X);

}  // namespace val

#endif  // VAL_REPRESENT_HPP
