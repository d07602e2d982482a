#ifndef VAL_CLASSIFIER_HPP
#define VAL_CLASSIFIER_HPP

#include <vector>

#include "val/kernel.hpp"
#include "val/types.hpp"

namespace val {

/// Kernel regularized least squares, one-vs-rest. Deterministic closed-form
/// training makes evaluation runs exactly reproducible.
struct RlscModel {
  Matrix support_points;  // t x m
  Matrix dual_weights;    // t x c, one column per class
  KernelSpec spec;
  double lambda = 1e-3;

  int num_classes() const { return static_cast<int>(dual_weights.cols()); }
};

/// Solve (K + lambda I) a_c = y_c for each class with +-1 one-vs-rest
/// targets, via Cholesky plus one step of iterative refinement.
/// `num_classes` < 0 infers max(labels)+1.
RlscModel train_rlsc(const Matrix& X, const std::vector<int>& y,
                     const KernelSpec& spec, double lambda, int num_classes = -1);

struct Prediction {
  std::vector<int> labels;
  Vector margins;          // per query point
  Matrix decision_values;  // q x c
};

/// Decision value f_c(x) = sum_j a_{j,c} k(x_j, x). Label is the argmax
/// (lowest class id on ties). Margin is |f| for binary or one-class models
/// and top-minus-second decision gap otherwise.
Prediction predict(const RlscModel& model, const Matrix& X);

/// k-nearest-neighbour vote under Euclidean distance. Distance ties prefer
/// the lower index; vote ties prefer the lower class id.
std::vector<int> knn_predict(const Matrix& Xl, const std::vector<int>& yl,
                             const Matrix& X, int k = 1);

/// Fraction of mismatching labels.
double error_rate(const std::vector<int>& predicted, const std::vector<int>& truth);

}  // namespace val

#endif  // VAL_CLASSIFIER_HPP
