#ifndef VAL_KERNEL_HPP
#define VAL_KERNEL_HPP

#include <optional>

#include "val/types.hpp"

namespace val {

enum class KernelKind { rbf, linear };

/// Kernel family plus parameters. `kappa` is a known upper bound on
/// k(.,.) when one exists (1 for rbf; data-dependent and usually absent
/// for linear).
struct KernelSpec {
  KernelKind kind = KernelKind::rbf;
  double gamma = 1.0;  // rbf only
  std::optional<double> kappa;

  void validate() const {
    if (kind == KernelKind::rbf && !(gamma > 0))
      throw ConfigError("rbf gamma must be > 0");
  }
};

inline KernelSpec make_rbf(double gamma) {
  KernelSpec s;
  s.kind = KernelKind::rbf;
  s.gamma = gamma;
  s.kappa = 1.0;
  s.validate();
  return s;
}

inline KernelSpec make_linear() {
  KernelSpec s;
  s.kind = KernelKind::linear;
  return s;
}

/// k(x, y). rbf: exp(-gamma*|x-y|^2) in (0,1]; linear: <x,y>.
double kernel_eval(const KernelSpec& spec, const Vector& x, const Vector& y);

/// Symmetric Gram matrix over the rows of X. Built from the upper triangle
/// and mirrored, so symmetry is exact.
struct KernelMatrix {
  Matrix entries;
  KernelSpec spec;

  int n() const { return static_cast<int>(entries.rows()); }
};

KernelMatrix kernel_matrix(const Matrix& X, const KernelSpec& spec);

/// Biased squared maximum mean discrepancy between the row sets X and Y:
///   (1/m^2) sum k(x_i,x_j) - (2/(m n)) sum k(x_i,y_j) + (1/n^2) sum k(y_i,y_j)
/// Exactly symmetric in its arguments and exactly 0 when X == Y.
double mmd_squared(const Matrix& X, const Matrix& Y, const KernelSpec& spec);

/// Default rbf bandwidth: gamma = 1 / (m * median squared pairwise distance)
/// over a deterministic subsample of at most 200 rows. Falls back to 1/m
/// when the median vanishes (duplicated points).
double median_heuristic_gamma(const Matrix& X);

}  // namespace val

#endif  // VAL_KERNEL_HPP
