#include "val/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace val {

double kernel_eval(const KernelSpec& spec, const Vector& x, const Vector& y) {
  if (x.size() != y.size()) throw ShapeError("kernel_eval: dimension mismatch");
  switch (spec.kind) {
    case KernelKind::rbf:
      return std::exp(-spec.gamma * (x - y).squaredNorm());
    case KernelKind::linear:
      return x.dot(y);
  }
  throw ConfigError("unknown kernel kind");
}

KernelMatrix kernel_matrix(const Matrix& X, const KernelSpec& spec) {
  spec.validate();
  if (!X.allFinite()) throw ShapeError("kernel_matrix: non-finite input");
  const int n = static_cast<int>(X.rows());
  KernelMatrix K;
  K.spec = spec;
  K.entries.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double v = kernel_eval(spec, X.row(i), X.row(j));
      K.entries(i, j) = v;
      K.entries(j, i) = v;
    }
  }
  return K;
}

namespace {

// Lexicographic row-major comparison, used only to canonicalize the
// argument order of mmd_squared so the estimator is exactly symmetric.
bool lex_greater(const Matrix& A, const Matrix& B) {
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) {
      if (A(i, j) > B(i, j)) return true;
      if (A(i, j) < B(i, j)) return false;
    }
  return false;
}

double mean_pairwise_kernel(const Matrix& A, const Matrix& B,
                            const KernelSpec& spec) {
  double s = 0.0;
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < B.rows(); ++j)
      s += kernel_eval(spec, A.row(i), B.row(j));
  return s / (static_cast<double>(A.rows()) * static_cast<double>(B.rows()));
}

}  // namespace

double mmd_squared(const Matrix& X, const Matrix& Y, const KernelSpec& spec) {
  spec.validate();
  if (X.rows() < 1 || Y.rows() < 1) throw ShapeError("mmd_squared: empty sample");
  if (X.cols() != Y.cols()) throw ShapeError("mmd_squared: dimension mismatch");

  const Matrix* A = &X;
  const Matrix* B = &Y;
  if (A->rows() > B->rows() ||
      (A->rows() == B->rows() && lex_greater(*A, *B)))
    std::swap(A, B);

  return mean_pairwise_kernel(*A, *A, spec) -
         2.0 * mean_pairwise_kernel(*A, *B, spec) +
         mean_pairwise_kernel(*B, *B, spec);
}

double median_heuristic_gamma(const Matrix& X) {
  const int n = static_cast<int>(X.rows());
  const int m = static_cast<int>(X.cols());
  if (n < 1 || m < 1) throw ShapeError("median_heuristic_gamma: empty input");

  // Evenly strided subsample keeps the heuristic deterministic.
  const int cap = 200;
  std::vector<int> rows;
  if (n <= cap) {
    for (int i = 0; i < n; ++i) rows.push_back(i);
  } else {
    for (int i = 0; i < cap; ++i)
      rows.push_back(static_cast<int>(static_cast<long>(i) * n / cap));
  }

  std::vector<double> d2;
  d2.reserve(rows.size() * (rows.size() - 1) / 2);
  for (size_t a = 0; a < rows.size(); ++a)
    for (size_t b = a + 1; b < rows.size(); ++b)
      d2.push_back((X.row(rows[a]) - X.row(rows[b])).squaredNorm());

  if (d2.empty()) return 1.0 / m;
  std::sort(d2.begin(), d2.end());
  const size_t mid = d2.size() / 2;
  const double med = (d2.size() % 2 == 1) ? d2[mid] : 0.5 * (d2[mid - 1] + d2[mid]);
  if (!(med > 0)) return 1.0 / m;
  return 1.0 / (m * med);
}

}  // namespace val
