#ifndef VAL_TYPES_HPP
#define VAL_TYPES_HPP

#include <Eigen/Dense>
#include <vector>

#include "val/errors.hpp"

namespace val {

/// Row-per-point real matrix, the working representation of a point set.
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// An ordered set of distinct indices into some point set. Order is
/// selection order, which several callers treat as meaningful (greedy
/// prefixes, query order).
struct SubsetIndices {
  std::vector<int> indices;

  SubsetIndices() = default;
  explicit SubsetIndices(std::vector<int> idx) : indices(std::move(idx)) {}

  int size() const { return static_cast<int>(indices.size()); }
  bool empty() const { return indices.empty(); }
  int operator[](int i) const { return indices[static_cast<size_t>(i)]; }

  bool contains(int v) const {
    for (int i : indices)
      if (i == v) return true;
    return false;
  }

  /// Throws unless all indices are distinct and within [0, n).
  void validate(int n) const {
    std::vector<bool> seen(static_cast<size_t>(n), false);
    for (int i : indices) {
      if (i < 0 || i >= n) throw ShapeError("subset index out of range");
      if (seen[static_cast<size_t>(i)]) throw ShapeError("duplicate subset index");
      seen[static_cast<size_t>(i)] = true;
    }
  }
};

/// Rows of X selected by `subset`, in subset order.
inline Matrix gather_rows(const Matrix& X, const SubsetIndices& subset) {
  Matrix out(subset.size(), X.cols());
  for (int i = 0; i < subset.size(); ++i) out.row(i) = X.row(subset[i]);
  return out;
}

}  // namespace val

#endif  // VAL_TYPES_HPP
