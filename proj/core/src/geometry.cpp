#include "val/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <utility>

#include "val/kernel.hpp"
#include "val/rng.hpp"

namespace val {

namespace {

constexpr double kPi = 3.14159265358979323846;

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt result = 1;
  for (int i = 1; i <= k; ++i) {
    result *= (n - k + i);
    result /= i;
  }
  return result;
}

}  // namespace

BigInt vc_hypothesis_count(int n, int rho) {
  if (n < 1) throw ConfigError("vc_hypothesis_count: n must be >= 1");
  if (rho < 1 || rho > n)
    throw ConfigError("vc_hypothesis_count: need 1 <= rho <= n");
  BigInt total = BigInt(1) << n;
  for (int i = 1; i <= rho - 1; ++i) total -= binomial(n, i);
  return total;
}

// ---------------------------------------------------------------------------
// Minimum enclosing ball
// ---------------------------------------------------------------------------

namespace {

bool ball_contains(const Ball& b, const Vector& p) {
  if (b.radius < 0) return false;
  const double r2 = b.radius * b.radius;
  return (p - b.center).squaredNorm() <= r2 * (1.0 + 1e-10) + 1e-30;
}

// Smallest ball with every point of `boundary` on its surface. Solves the
// circumcentre system in the affine frame of the first point; if the points
// are affinely dependent the most recently added one is redundant and is
// dropped.
Ball ball_from_boundary(const std::vector<Vector>& boundary, int m) {
  Ball b;
  if (boundary.empty()) {
    b.center = Vector::Zero(m);
    b.radius = -1.0;  // contains nothing
    return b;
  }
  if (boundary.size() == 1) {
    b.center = boundary[0];
    b.radius = 0.0;
    return b;
  }
  const int k = static_cast<int>(boundary.size()) - 1;
  Matrix gram(k, k);
  Vector rhs(k);
  std::vector<Vector> rel(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i)
    rel[static_cast<size_t>(i)] = boundary[static_cast<size_t>(i) + 1] - boundary[0];
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j)
      gram(i, j) = 2.0 * rel[static_cast<size_t>(i)].dot(rel[static_cast<size_t>(j)]);
    rhs(i) = rel[static_cast<size_t>(i)].squaredNorm();
  }

  Eigen::FullPivLU<Matrix> lu(gram);
  lu.setThreshold(1e-12);
  if (lu.rank() < k) {
    std::vector<Vector> reduced(boundary.begin(), boundary.end() - 1);
    return ball_from_boundary(reduced, m);
  }
  const Vector lambda = lu.solve(rhs);
  Vector center = boundary[0];
  for (int i = 0; i < k; ++i) center += lambda(i) * rel[static_cast<size_t>(i)];
  b.center = center;
  b.radius = (center - boundary[0]).norm();
  return b;
}

Ball welzl(std::vector<Vector>& pts, size_t end, std::vector<Vector>& boundary, int m) {
  if (end == 0 || static_cast<int>(boundary.size()) == m + 1)
    return ball_from_boundary(boundary, m);
  Ball b = welzl(pts, end - 1, boundary, m);
  if (ball_contains(b, pts[end - 1])) return b;
  boundary.push_back(pts[end - 1]);
  b = welzl(pts, end - 1, boundary, m);
  boundary.pop_back();
  // Move-to-front: boundary points are likely to be queried again early.
  const Vector moved = pts[end - 1];
  for (size_t i = end - 1; i > 0; --i) pts[i] = pts[i - 1];
  pts[0] = moved;
  return b;
}

Ball meb_exact(const Matrix& points) {
  const int n = static_cast<int>(points.rows());
  const int m = static_cast<int>(points.cols());
  std::vector<Vector> pts(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) pts[static_cast<size_t>(i)] = points.row(i);
  // Fixed-seed shuffle keeps the expected-linear behaviour of the
  // randomized recursion while staying deterministic.
  Rng rng(0x6d656233ull);
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.uniform_int(0, i));
    std::swap(pts[static_cast<size_t>(i)], pts[static_cast<size_t>(j)]);
  }
  std::vector<Vector> boundary;
  return welzl(pts, static_cast<size_t>(n), boundary, m);
}

// Frank-Wolfe iteration: the running radius is a lower bound on the optimum
// and grows monotonically, so stopping when the farthest point is within
// r*(1+delta/2) certifies a (1+delta)-approximation.
Ball meb_core_set(const Matrix& points, double delta) {
  const int n = static_cast<int>(points.rows());
  int a = 0;
  double best = -1.0;
  for (int i = 0; i < n; ++i) {
    const double d = (points.row(i) - points.row(0)).squaredNorm();
    if (d > best) {
      best = d;
      a = i;
    }
  }
  int bidx = a;
  best = -1.0;
  for (int i = 0; i < n; ++i) {
    const double d = (points.row(i) - points.row(a)).squaredNorm();
    if (d > best) {
      best = d;
      bidx = i;
    }
  }
  Vector center = 0.5 * (points.row(a) + points.row(bidx));
  double r2 = 0.25 * (points.row(a) - points.row(bidx)).squaredNorm();

  const double stop = (1.0 + 0.5 * delta) * (1.0 + 0.5 * delta);
  const long cap = static_cast<long>(std::ceil(20.0 / delta));
  for (long iter = 0; iter < cap; ++iter) {
    int f = 0;
    double d2 = -1.0;
    for (int i = 0; i < n; ++i) {
      const double d = (points.row(i).transpose() - center).squaredNorm();
      if (d > d2) {
        d2 = d;
        f = i;
      }
    }
    if (d2 <= r2 * stop || r2 == 0.0) break;
    const double excess = d2 / r2 - 1.0;
    const double step = excess / (2.0 * (1.0 + excess));
    center = (1.0 - step) * center + step * points.row(f).transpose();
    r2 *= 1.0 + excess * excess / (4.0 * (1.0 + excess));
  }
  Ball b;
  b.center = center;
  b.radius = 0.0;
  return b;
}

}  // namespace

Ball meb(const Matrix& points) {
  const int n = static_cast<int>(points.rows());
  const int m = static_cast<int>(points.cols());
  if (n < 1) throw ShapeError("meb: need at least one point");
  if (!points.allFinite()) throw ShapeError("meb: non-finite input");

  Ball b = (m <= 3) ? meb_exact(points) : meb_core_set(points, 1e-3);
  // Report the actual covering radius so containment holds exactly.
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    worst = std::max(worst, (points.row(i).transpose() - b.center).squaredNorm());
  b.radius = std::sqrt(worst);
  return b;
}

// ---------------------------------------------------------------------------
// Theorem checks
// ---------------------------------------------------------------------------

namespace {

Vector random_unit_vector(int m, Rng& rng) {
  Vector u(m);
  double norm = 0.0;
  do {
    for (int i = 0; i < m; ++i) u(i) = rng.normal();
    norm = u.norm();
  } while (norm < 1e-12);
  return u / norm;
}

Vector random_point_in_unit_ball(int m, Rng& rng) {
  const Vector dir = random_unit_vector(m, rng);
  const double radius = std::pow(rng.uniform(), 1.0 / m);
  return radius * dir;
}

}  // namespace

TheoremReport halfspace_surface_check(const Matrix& points, int trials,
                                      std::uint64_t seed) {
  if (points.rows() < 2) throw ShapeError("halfspace_surface_check: need >= 2 points");
  const int n = static_cast<int>(points.rows());
  const int m = static_cast<int>(points.cols());
  const Ball ball = meb(points);
  const double r = ball.radius;

  TheoremReport report;
  report.theorem = "theorem3_halfspace_surface";
  report.trials = trials;
  report.tolerance = 1e-6;  // relative to the enclosing radius

  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    const Vector u = random_unit_vector(m, rng);
    // Farthest-from-centre point on the closed side of the hyperplane.
    double best = -1.0;
    for (int i = 0; i < n; ++i) {
      const Vector rel = points.row(i).transpose() - ball.center;
      if (rel.dot(u) >= -1e-9 * r) best = std::max(best, rel.norm());
    }
    const double deviation = (r > 0) ? (r - best) / r : 0.0;
    report.max_deviation = std::max(report.max_deviation, deviation);
    if (deviation > report.tolerance) ++report.violations;
  }
  return report;
}

double shell_fraction(int m, double eps) {
  if (m < 1) throw ConfigError("shell_fraction: m must be >= 1");
  if (!(eps > 0)) throw ConfigError("shell_fraction: eps must be > 0");
  return 1.0 - std::pow(1.0 + eps, -static_cast<double>(m));
}

double mc_shell_fraction(int m, double eps, long samples, std::uint64_t seed) {
  if (m < 1) throw ConfigError("mc_shell_fraction: m must be >= 1");
  if (!(eps > 0)) throw ConfigError("mc_shell_fraction: eps must be > 0");
  if (samples < 1) throw ConfigError("mc_shell_fraction: samples must be >= 1");
  Rng rng(seed);
  const double threshold = 1.0 / (1.0 + eps);
  long hits = 0;
  for (long s = 0; s < samples; ++s)
    if (random_point_in_unit_ball(m, rng).norm() > threshold) ++hits;
  return static_cast<double>(hits) / static_cast<double>(samples);
}

std::pair<double, double> hyperplane_angle_range(const Ball& ball, const Vector& nu) {
  if (nu.size() != ball.center.size())
    throw ShapeError("hyperplane_angle_range: dimension mismatch");
  const double dist = (ball.center - nu).norm();
  if (!(dist > ball.radius))
    throw DomainError("hyperplane_angle_range: nu must lie strictly outside the ball");
  const double theta = std::asin(ball.radius / dist);
  return {theta, 2.0 * kPi - theta};
}

SubsetIndices outlier_filter(const Matrix& X, const OutlierParams& params) {
  params.validate();
  const int n = static_cast<int>(X.rows());
  const int m = static_cast<int>(X.cols());
  if (params.k_nn >= n) throw ConfigError("outlier_filter: k_nn must be < n");

  const Ball global = meb(X);
  SubsetIndices kept;
  std::vector<std::pair<double, int>> dist(static_cast<size_t>(n));
  Matrix local(params.k_nn + 1, m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      dist[static_cast<size_t>(j)] = {(X.row(i) - X.row(j)).squaredNorm(), j};
    dist[static_cast<size_t>(i)].first = std::numeric_limits<double>::infinity();
    std::partial_sort(dist.begin(), dist.begin() + params.k_nn, dist.end());
    local.row(0) = X.row(i);
    for (int j = 0; j < params.k_nn; ++j)
      local.row(j + 1) = X.row(dist[static_cast<size_t>(j)].second);

    const double local_r = meb(local).radius;
    const double ratio = (local_r == 0.0) ? 0.0 : local_r / global.radius;
    if (!(std::pow(ratio, m) > params.eps_prime)) kept.indices.push_back(i);
  }
  return kept;
}

TheoremReport distance_bound_check(const Matrix& points, std::uint64_t seed,
                                   int trials) {
  const int n = static_cast<int>(points.rows());
  if (n < 2) throw ShapeError("distance_bound_check: need >= 2 points");
  const Ball ball = meb(points);
  const double r = ball.radius;

  std::vector<int> checked;
  if (trials >= n) {
    checked.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) checked[static_cast<size_t>(i)] = i;
  } else {
    Rng rng(seed);
    checked = sample_without_replacement(n, std::max(trials, 1), rng);
  }

  TheoremReport report;
  report.theorem = "lemma6_7_distance_bounds";
  report.trials = static_cast<long>(checked.size());
  report.tolerance = 1e-9;  // relative to the enclosing radius

  for (int i : checked) {
    double far = 0.0;
    for (int j = 0; j < n; ++j)
      far = std::max(far, (points.row(i) - points.row(j)).norm());
    const double to_center = (points.row(i).transpose() - ball.center).norm();
    const double excess = std::max(far - 2.0 * r, far - (to_center + r));
    const double deviation = (r > 0) ? excess / r : 0.0;
    report.max_deviation = std::max(report.max_deviation, deviation);
    if (deviation > report.tolerance) ++report.violations;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Verification suite
// ---------------------------------------------------------------------------

namespace {

Matrix random_cloud(int n, int m, double spread, Rng& rng) {
  Matrix X(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) X(i, j) = spread * rng.normal();
  return X;
}

TheoremReport check_vc_count() {
  TheoremReport report;
  report.theorem = "theorem1_vc_count";
  report.tolerance = 0.0;
  // Independent route: Pascal's triangle and the tail sum
  // 1 + sum_{i=rho}^{n} C(n,i).
  const int n_max = 20;
  std::vector<std::vector<BigInt>> pascal(static_cast<size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    pascal[static_cast<size_t>(n)].resize(static_cast<size_t>(n) + 1, 1);
    for (int k = 1; k < n; ++k)
      pascal[static_cast<size_t>(n)][static_cast<size_t>(k)] =
          pascal[static_cast<size_t>(n) - 1][static_cast<size_t>(k) - 1] +
          pascal[static_cast<size_t>(n) - 1][static_cast<size_t>(k)];
  }
  for (int n = 1; n <= n_max; ++n) {
    for (int rho = 1; rho <= n; ++rho) {
      BigInt expected = 1;
      for (int i = rho; i <= n; ++i)
        expected += pascal[static_cast<size_t>(n)][static_cast<size_t>(i)];
      ++report.trials;
      if (vc_hypothesis_count(n, rho) != expected) ++report.violations;
    }
  }
  return report;
}

TheoremReport check_halfspace(int trials, Rng rng) {
  TheoremReport total;
  total.theorem = "theorem3_halfspace_surface";
  total.tolerance = 1e-6;
  for (int c = 0; c < 50; ++c) {
    const Matrix cloud = random_cloud(30, 2, 1.0 + rng.uniform(), rng);
    const TheoremReport r = halfspace_surface_check(cloud, trials, rng.next_u64());
    total.trials += r.trials;
    total.violations += r.violations;
    total.max_deviation = std::max(total.max_deviation, r.max_deviation);
  }
  return total;
}

TheoremReport check_distance_bounds(Rng rng) {
  TheoremReport total;
  total.theorem = "lemma6_7_distance_bounds";
  total.tolerance = 1e-9;
  for (int c = 0; c < 100; ++c) {
    const int n = 2 + static_cast<int>(rng.uniform_int(0, 98));
    const int m = 1 + static_cast<int>(rng.uniform_int(0, 3));
    const Matrix cloud = random_cloud(n, m, 1.0 + rng.uniform(), rng);
    const TheoremReport r = distance_bound_check(cloud, rng.next_u64(), n);
    total.trials += r.trials;
    total.violations += r.violations;
    total.max_deviation = std::max(total.max_deviation, r.max_deviation);
  }
  return total;
}

TheoremReport check_shell_fraction(Rng rng) {
  TheoremReport report;
  report.theorem = "lemma12_shell_fraction";
  report.tolerance = 0.02;
  const std::pair<int, double> combos[] = {{2, 1.0}, {3, 0.25}, {5, 0.5}};
  for (const auto& [m, eps] : combos) {
    const double mc = mc_shell_fraction(m, eps, 100000, rng.next_u64());
    const double diff = std::abs(mc - shell_fraction(m, eps));
    ++report.trials;
    report.max_deviation = std::max(report.max_deviation, diff);
    if (diff > report.tolerance) ++report.violations;
  }
  return report;
}

TheoremReport check_angle_range(int trials, Rng rng) {
  TheoremReport report;
  report.theorem = "lemma11_angle_range";
  report.tolerance = 1e-9;
  for (int t = 0; t < trials; ++t) {
    const int m = 2 + static_cast<int>(rng.uniform_int(0, 2));
    Ball outer;
    outer.center = Vector::Zero(m);
    outer.radius = 0.1 + 2.0 * rng.uniform();
    const double eps = 0.05 + rng.uniform();
    Ball inner = outer;
    inner.radius = outer.radius / (1.0 + eps);
    const double dist = outer.radius * (1.01 + 2.0 * rng.uniform());
    const Vector nu = dist * random_unit_vector(m, rng);

    const auto [outer_lo, outer_hi] = hyperplane_angle_range(outer, nu);
    const auto [inner_lo, inner_hi] = hyperplane_angle_range(inner, nu);
    ++report.trials;
    // The outer ball pins the hyperplane into a strictly narrower interval,
    // and the bound must invert back to R/d.
    const double invert = std::abs(std::sin(outer_lo) * dist - outer.radius) /
                          outer.radius;
    report.max_deviation = std::max(report.max_deviation, invert);
    const bool ordered = inner_lo < outer_lo && inner_hi > outer_hi &&
                         outer_lo > 0 && outer_hi < 2.0 * kPi;
    if (!ordered || invert > report.tolerance) ++report.violations;
  }
  return report;
}

TheoremReport check_center_mmd(Rng rng) {
  TheoremReport report;
  report.theorem = "prop10_center_vs_surface_mmd";
  report.tolerance = 0.0;
  const KernelSpec linear = make_linear();
  for (int t = 0; t < 20; ++t) {
    const int m = 2 + static_cast<int>(rng.uniform_int(0, 3));
    const double radius = 0.5 + 2.0 * rng.uniform();
    Vector offset(m);
    for (int j = 0; j < m; ++j) offset(j) = 4.0 * rng.normal();
    Matrix sample(1000, m);
    for (int i = 0; i < 1000; ++i)
      sample.row(i) =
          (offset + radius * random_point_in_unit_ball(m, rng)).transpose();

    const Ball ball = meb(sample);
    Matrix center(1, m);
    center.row(0) = ball.center.transpose();
    const double center_mmd = mmd_squared(center, sample, linear);
    for (int s = 0; s < 3; ++s) {
      Matrix surface(1, m);
      surface.row(0) =
          (ball.center + ball.radius * random_unit_vector(m, rng)).transpose();
      const double surface_mmd = mmd_squared(surface, sample, linear);
      ++report.trials;
      const double gap = center_mmd - surface_mmd;
      report.max_deviation = std::max(report.max_deviation, gap);
      if (gap > report.tolerance) ++report.violations;
    }
  }
  return report;
}

}  // namespace

std::vector<TheoremReport> verify_theorems(int trials, std::uint64_t seed) {
  if (trials < 1) throw ConfigError("verify_theorems: trials must be >= 1");
  Rng rng(seed);
  std::vector<TheoremReport> reports;
  reports.push_back(check_vc_count());
  reports.push_back(check_halfspace(trials, rng.fork(1)));
  reports.push_back(check_distance_bounds(rng.fork(2)));
  reports.push_back(check_shell_fraction(rng.fork(3)));
  reports.push_back(check_angle_range(trials, rng.fork(4)));
  reports.push_back(check_center_mmd(rng.fork(5)));
  return reports;
}

void write_reports_csv(const std::vector<TheoremReport>& reports, std::ostream& out) {
  out << "theorem,trials,violations,max_deviation,tolerance\n";
  char buf[64];
  for (const TheoremReport& r : reports) {
    out << r.theorem << ',' << r.trials << ',' << r.violations << ',';
    std::snprintf(buf, sizeof(buf), "%.17g", r.max_deviation);
    out << buf << ',';
    std::snprintf(buf, sizeof(buf), "%.17g", r.tolerance);
    out << buf << '\n';
  }
}

}  // namespace val
