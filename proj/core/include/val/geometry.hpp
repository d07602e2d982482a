#ifndef VAL_GEOMETRY_HPP
#define VAL_GEOMETRY_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "val/types.hpp"

namespace val {

using BigInt = boost::multiprecision::cpp_int;

struct Ball {
  Vector center;
  double radius = 0.0;
};

/// Parameters of the volume-ratio outlier filter: a point is dropped when
/// the ball around it and its `k_nn` nearest neighbours is large relative
/// to the global enclosing ball.
struct OutlierParams {
  double eps_prime = 0.05;
  int k_nn = 5;

  void validate() const {
    if (!(eps_prime > 0) || !(eps_prime < 1))
      throw ConfigError("eps_prime must be in (0, 1)");
    if (k_nn < 1) throw ConfigError("k_nn must be >= 1");
  }
};

/// Outcome of one Monte Carlo / exhaustive theorem check.
struct TheoremReport {
  std::string theorem;
  long trials = 0;
  long violations = 0;
  double max_deviation = 0.0;
  double tolerance = 0.0;
};

/// Number of consistent hypotheses over n points at query multiplicity rho:
/// 2^n - sum_{i=1}^{rho-1} C(n, i), computed exactly.
BigInt vc_hypothesis_count(int n, int rho);

/// Minimum enclosing ball of the rows of `points`. Exact (Welzl
/// move-to-front) for m <= 3; (1+delta)-approximate Frank-Wolfe core-set
/// ball with delta = 1e-3 for higher dimensions. The returned radius is the
/// true maximum distance from the returned center, so containment is exact.
Ball meb(const Matrix& points);

/// Check that every closed half-space through the enclosing ball's center
/// contains a point at distance >= radius * (1 - 1e-6); `trials` random
/// hyperplane normals.
TheoremReport halfspace_surface_check(const Matrix& points, int trials,
                                      std::uint64_t seed);

/// Fraction of an m-ball's volume in the shell between relative radius
/// 1/(1+eps) and 1: analytically 1 - 1/(1+eps)^m.
double shell_fraction(int m, double eps);

/// Monte Carlo estimate of shell_fraction from uniform ball samples.
double mc_shell_fraction(int m, double eps, long samples, std::uint64_t seed);

/// Angle interval [arcsin(R/d), 2*pi - arcsin(R/d)] a hyperplane through the
/// external point `nu` can make with the ball; throws DomainError when `nu`
/// is inside or on the ball.
std::pair<double, double> hyperplane_angle_range(const Ball& ball, const Vector& nu);

/// Keep the points whose local neighbourhood ball is small relative to the
/// global one: drop point i iff (r_local/r_global)^m > eps_prime, where
/// r_local is the enclosing radius of the point plus its k_nn nearest
/// neighbours. Kept indices are returned in original order.
SubsetIndices outlier_filter(const Matrix& X, const OutlierParams& params);

/// Verify the enclosing-ball distance bounds: for each checked point i,
/// max_j |x_i - x_j| <= 2R and <= |x_i - C| + R within 1e-9 * R. Checks all
/// points when trials >= n, otherwise a seeded random subset of size
/// `trials`.
TheoremReport distance_bound_check(const Matrix& points, std::uint64_t seed,
                                   int trials);

/// The full Monte Carlo verification suite behind `valkit verify-theory`.
std::vector<TheoremReport> verify_theorems(int trials, std::uint64_t seed);

/// CSV table: theorem,trials,violations,max_deviation,tolerance.
void write_reports_csv(const std::vector<TheoremReport>& reports, std::ostream& out);

}  // namespace val

#endif  // VAL_GEOMETRY_HPP
