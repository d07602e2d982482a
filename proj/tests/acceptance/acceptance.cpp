// Acceptance suite: one line per criterion, exit 0 only if all pass.
// Each criterion pins its tolerance and time budget in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "support/oracles.hpp"
#include "support/test_util.hpp"
#include "val/geometry.hpp"
#include "val/harness.hpp"

using namespace val;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

void require_time(double elapsed, double budget) {
  if (elapsed > budget)
    throw Failure("exceeded time budget: " + std::to_string(elapsed) + "s > " +
                  std::to_string(budget) + "s");
}

// --- 1 -----------------------------------------------------------------
void oracle_equivalence_sparsify() {
  const auto start = Clock::now();
  Rng rng(2024);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 4 + static_cast<int>(rng.uniform_int(0, 46));
    const int m = 1 + static_cast<int>(rng.uniform_int(0, 4));
    const Matrix X = testutil::random_cloud(n, m, 1.0, rng);
    const ScoreVariant variant =
        (trial % 2 == 0) ? ScoreVariant::paper : ScoreVariant::ted;
    SparsifyParams params;
    params.variant = variant;
    const KernelSpec spec = make_rbf(0.7);
    const SubsetIndices got = sparsify_halve(X, spec, params);
    const std::vector<int> want =
        oracles::naive_greedy_select(kernel_matrix(X, spec).entries, params.mu,
                                     n / 2, variant == ScoreVariant::paper);
    require(got.indices == want,
            "index sequence diverged from the naive oracle at trial " +
                std::to_string(trial));
  }
  require_time(seconds_since(start), 10.0);
}

// --- 2 -----------------------------------------------------------------
void em_optimality_tiny() {
  const auto start = Clock::now();
  Rng rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const int k = 2 + static_cast<int>(rng.uniform_int(0, 1));
    const int n = k + 2 + static_cast<int>(rng.uniform_int(0, 6 - k));
    const Matrix X = testutil::random_cloud(n, 2, 1.0, rng);
    Matrix opt_centers;
    const double opt = oracles::exhaustive_partition_loss(X, k, &opt_centers);

    EmParams given;
    given.init = EmInit::given;
    given.given_centers = opt_centers;
    const double from_opt = em_representation(X, k, given).loss_trace.back();
    require(std::abs(from_opt - opt) <= 1e-9,
            "given-init loss " + std::to_string(from_opt) +
                " != exhaustive optimum " + std::to_string(opt));

    for (int restart = 0; restart < 5; ++restart) {
      EmParams random_init;
      random_init.seed = rng.next_u64();
      const double got = em_representation(X, k, random_init).loss_trace.back();
      require(got >= opt - 1e-9, "random-init loss beat the exhaustive optimum");
    }
  }
  require_time(seconds_since(start), 30.0);
}

// --- 3 -----------------------------------------------------------------
void theorem13_center_mmd() {
  Rng rng(13);
  const KernelSpec lin = make_linear();
  for (int run = 0; run < 100; ++run) {
    const int n = 4 + static_cast<int>(rng.uniform_int(0, 26));
    const int k = 1 + static_cast<int>(rng.uniform_int(0, 4));
    const int m = 1 + static_cast<int>(rng.uniform_int(0, 3));
    const Matrix X = testutil::random_cloud(n, m, 1.0, rng);
    Matrix centers = testutil::random_cloud(std::min(k, n), m, 1.0, rng);
    const std::vector<int> asg = assign(X, centers);
    centers = update_centers(X, asg, centers);
    for (int c = 0; c < centers.rows(); ++c) {
      std::vector<int> members;
      for (int i = 0; i < n; ++i)
        if (asg[static_cast<size_t>(i)] == c) members.push_back(i);
      if (members.empty()) continue;
      Matrix cluster(members.size(), m);
      for (size_t i = 0; i < members.size(); ++i)
        cluster.row(static_cast<long>(i)) = X.row(members[i]);
      Matrix center(1, m);
      center.row(0) = centers.row(c);
      const double v = mmd_squared(center, cluster, lin);
      require(std::abs(v) <= 1e-10,
              "cluster mmd^2 = " + std::to_string(v) + " at run " +
                  std::to_string(run));
    }
  }
}

// --- 4 -----------------------------------------------------------------
void monotone_loss() {
  Rng rng(4);
  for (int run = 0; run < 1000; ++run) {
    const int n = 2 + static_cast<int>(rng.uniform_int(0, 28));
    const int k = 1 + static_cast<int>(rng.uniform_int(0, std::min(n, 5) - 1));
    const Matrix X = testutil::random_cloud(n, 1 + run % 3, 1.0, rng);
    EmParams params;
    params.seed = rng.next_u64();
    const Representation rep = em_representation(X, k, params);
    for (size_t i = 1; i < rep.loss_trace.size(); ++i)
      require(rep.loss_trace[i] <= rep.loss_trace[i - 1] + 1e-12,
              "loss increased at run " + std::to_string(run) + " step " +
                  std::to_string(i));
  }
}

// --- 5 -----------------------------------------------------------------
void theorem3_halfspace() {
  const auto start = Clock::now();
  Rng rng(55);
  long violations = 0;
  for (int c = 0; c < 50; ++c) {
    const Matrix cloud = testutil::random_cloud(30, 2, 1.0 + rng.uniform(), rng);
    violations += halfspace_surface_check(cloud, 200, rng.next_u64()).violations;
  }
  require(violations == 0, std::to_string(violations) + " half-space violations");
  require_time(seconds_since(start), 5.0);
}

// --- 6 -----------------------------------------------------------------
void shell_fraction_mc() {
  const auto start = Clock::now();
  const std::pair<int, double> combos[] = {{2, 1.0}, {3, 0.25}, {5, 0.5}};
  std::uint64_t seed = 606;
  for (const auto& [m, eps] : combos) {
    const double mc = mc_shell_fraction(m, eps, 100000, seed++);
    const double want = 1.0 - std::pow(1.0 + eps, -m);
    require(std::abs(mc - want) <= 0.02,
            "mc=" + std::to_string(mc) + " vs analytic=" + std::to_string(want) +
                " at m=" + std::to_string(m));
  }
  require_time(seconds_since(start), 5.0);
}

// --- 7 -----------------------------------------------------------------
void distance_bounds() {
  Rng rng(7);
  long violations = 0;
  for (int c = 0; c < 100; ++c) {
    const int n = 2 + static_cast<int>(rng.uniform_int(0, 98));
    const int m = 1 + static_cast<int>(rng.uniform_int(0, 3));
    const Matrix cloud = testutil::random_cloud(n, m, 1.0 + rng.uniform(), rng);
    violations += distance_bound_check(cloud, rng.next_u64(), n).violations;
  }
  require(violations == 0, std::to_string(violations) + " distance-bound violations");
}

// --- 8 -----------------------------------------------------------------
void vc_count_oracle() {
  // Independent route: Pascal's triangle tail sum 1 + sum_{i=rho..n} C(n,i).
  std::vector<std::vector<BigInt>> pascal(21);
  for (int n = 0; n <= 20; ++n) {
    pascal[static_cast<size_t>(n)].assign(static_cast<size_t>(n) + 1, 1);
    for (int k = 1; k < n; ++k)
      pascal[static_cast<size_t>(n)][static_cast<size_t>(k)] =
          pascal[static_cast<size_t>(n) - 1][static_cast<size_t>(k) - 1] +
          pascal[static_cast<size_t>(n) - 1][static_cast<size_t>(k)];
  }
  for (int n = 1; n <= 20; ++n)
    for (int rho = 1; rho <= n; ++rho) {
      BigInt expected = 1;
      for (int i = rho; i <= n; ++i)
        expected += pascal[static_cast<size_t>(n)][static_cast<size_t>(i)];
      require(vc_hypothesis_count(n, rho) == expected,
              "mismatch at n=" + std::to_string(n) + " rho=" + std::to_string(rho));
    }
}

// --- 9 -----------------------------------------------------------------
void val_behavior() {
  const auto start = Clock::now();
  double val_err_sum = 0.0, random_err_sum = 0.0;
  int covered = 0;
  const int seeds = 20;
  for (int seed = 1; seed <= seeds; ++seed) {
    std::ostringstream cfg;
    cfg << "data.shape=blobs\ndata.classes=3\ndata.per_class=50\n"
        << "data.separation=10\ndata.noise=1\ndata.seed=" << seed << "\n"
        << "strategies=val,random\nbudgets=3\nrepeats=1\nmaster_seed=" << seed
        << "\n";
    const ErrorCurve curve = run_experiment(parse_config_text(cfg.str()));
    for (const CurveRow& r : curve.rows) {
      if (r.strategy == "val") val_err_sum += r.error_rate;
      if (r.strategy == "random") random_err_sum += r.error_rate;
    }

    const Dataset ds = gen_synthetic(SyntheticShape::blobs, 3, 50, 10, 1,
                                     static_cast<std::uint64_t>(seed));
    StrategyConfig config;
    config.kernel = make_rbf(median_heuristic_gamma(ds.features));
    config.seed = Rng::mix(static_cast<std::uint64_t>(seed), 0xA1);
    const SubsetIndices picked = select_val(ds, 3, config);
    std::vector<bool> hit(3, false);
    for (int i : picked.indices) hit[static_cast<size_t>(ds.labels[static_cast<size_t>(i)])] = true;
    if (hit[0] && hit[1] && hit[2]) ++covered;
  }
  require(val_err_sum <= random_err_sum,
          "mean error val=" + std::to_string(val_err_sum / seeds) +
              " > random=" + std::to_string(random_err_sum / seeds));
  require(covered * 100 >= seeds * 95,
          "one-per-cluster coverage " + std::to_string(covered) + "/" +
              std::to_string(seeds));
  require_time(seconds_since(start), 60.0);
}

// --- 10 ----------------------------------------------------------------
void target_independence() {
  Rng rng(10);
  for (int trial = 0; trial < 5; ++trial) {
    const Dataset ds = gen_synthetic(SyntheticShape::blobs, 3, 20, 8, 1,
                                     rng.next_u64());
    LabelOracle oracle(ds, 3);
    StrategyConfig config;
    config.kernel = make_rbf(median_heuristic_gamma(ds.features));
    config.seed = rng.next_u64();
    const SubsetIndices picked = select_val(ds, 3, config);
    require(picked.size() == 3, "wrong selection size");
    require(oracle.queries_used() == 0,
            "select_val consumed " + std::to_string(oracle.queries_used()) +
                " labels");
  }
  // Harness accounting: a val run charges exactly the budget, nothing more.
  const ErrorCurve curve = run_experiment(parse_config_text(
      "data.shape=blobs\ndata.classes=2\ndata.per_class=20\ndata.seed=3\n"
      "strategies=val\nbudgets=2,4\nrepeats=2\nmaster_seed=8\n"));
  for (const CurveRow& r : curve.rows)
    require(r.queries_used == r.budget, "oracle charge != budget");
}

// --- 11 ----------------------------------------------------------------
std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), "missing " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void run_determinism() {
#ifndef VALKIT_CLI_PATH
  throw Failure("CLI path not configured");
#else
  namespace fs = std::filesystem;
  const fs::path base = fs::temp_directory_path() / "valkit_acceptance_run";
  fs::remove_all(base);
  fs::create_directories(base / "out1");
  fs::create_directories(base / "out2");

  for (int i = 1; i <= 2; ++i) {
    std::ofstream cfg(base / ("exp" + std::to_string(i) + ".cfg"));
    cfg << "data.shape=blobs\ndata.classes=3\ndata.per_class=30\n"
        << "data.separation=8\ndata.noise=1\ndata.seed=9\n"
        << "strategies=val,random,ted,margin\nbudgets=3,6\nrepeats=2\n"
        << "master_seed=123\noutput_dir=" << (base / ("out" + std::to_string(i))).string()
        << "\n";
  }
  for (int i = 1; i <= 2; ++i) {
    const std::string cmd = std::string(VALKIT_CLI_PATH) + " run --config " +
                            (base / ("exp" + std::to_string(i) + ".cfg")).string() +
                            " > /dev/null 2>&1";
    require(std::system(cmd.c_str()) == 0, "CLI run failed");
  }
  const std::string a = read_file((base / "out1" / "curve.csv").string());
  const std::string b = read_file((base / "out2" / "curve.csv").string());
  require(!a.empty(), "empty curve output");
  require(a == b, "curve.csv differs between identical runs");
  fs::remove_all(base);
#endif
}

// --- 12 ----------------------------------------------------------------
void deflation_spectrum() {
  Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + static_cast<int>(rng.uniform_int(0, 37));
    Matrix psd;
    if (trial % 2 == 0) {
      const Matrix X = testutil::random_cloud(n, 3, 1.0, rng);
      psd = kernel_matrix(X, make_rbf(0.5)).entries;
    } else {
      const Matrix A = testutil::random_cloud(n, n, 1.0, rng);
      psd = A * A.transpose() / n;
      psd = 0.5 * (psd + psd.transpose()).eval();  // exact symmetry
    }
    KernelMatrix K;
    K.entries = psd;
    K.spec = make_linear();
    const int at = static_cast<int>(rng.uniform_int(0, n - 1));
    const KernelMatrix out = deflate(K, at, 0.01 + rng.uniform());
    require(out.entries == out.entries.transpose().eval(),
            "asymmetric deflation output at trial " + std::to_string(trial));
    const Eigen::SelfAdjointEigenSolver<Matrix> eig(out.entries);
    require(eig.eigenvalues().minCoeff() >= -1e-8 * n,
            "eigenvalue " + std::to_string(eig.eigenvalues().minCoeff()) +
                " below tolerance at trial " + std::to_string(trial));
  }
}

// --- 13 ----------------------------------------------------------------
void scale_smoke_test() {
  const auto start = Clock::now();
  namespace fs = std::filesystem;

  // 16-dimensional synthetic blobs in class-major order, written through the
  // CSV interface.
  Rng rng(1313);
  const int n = 2000, m = 16, classes = 4, per_class = n / classes;
  Dataset ds;
  ds.features.resize(n, m);
  ds.labels.resize(n);
  ds.name = "smoke16d";
  Matrix centers(classes, m);
  for (int c = 0; c < classes; ++c)
    for (int j = 0; j < m; ++j) centers(c, j) = 6.0 * rng.normal();
  int row = 0;
  for (int c = 0; c < classes; ++c)
    for (int i = 0; i < per_class; ++i, ++row) {
      ds.labels[static_cast<size_t>(row)] = c;
      for (int j = 0; j < m; ++j) ds.features(row, j) = centers(c, j) + rng.normal();
    }

  const fs::path dir = fs::temp_directory_path() / "valkit_acceptance_scale";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string csv = (dir / "smoke.csv").string();
  save_csv(ds, csv);

  std::ostringstream cfg;
  cfg << "data.csv=" << csv << "\nstrategies=val,random,ted,margin\n"
      << "budgets=5,10,20,30\nrepeats=5\nmaster_seed=99\nrecord_timing=true\n";
  const ErrorCurve curve = run_experiment(parse_config_text(cfg.str()));
  require(curve.rows.size() == 4 * 5 * 4, "unexpected row count");
  for (const CurveRow& r : curve.rows)
    require(r.queries_used == r.budget, "oracle charge != budget");
  fs::remove_all(dir);
  require_time(seconds_since(start), 300.0);
}

struct Criterion {
  const char* name;
  std::function<void()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"01 sparsify matches the naive rescoring oracle", oracle_equivalence_sparsify},
      {"02 em optimality on tiny instances", em_optimality_tiny},
      {"03 cluster-centroid mmd vanishes (linear kernel)", theorem13_center_mmd},
      {"04 em loss traces are non-increasing", monotone_loss},
      {"05 half-spaces through the center touch the surface", theorem3_halfspace},
      {"06 shell fraction Monte Carlo agreement", shell_fraction_mc},
      {"07 enclosing-ball distance bounds", distance_bounds},
      {"08 vc hypothesis count vs binomial oracle", vc_count_oracle},
      {"09 val beats random and covers clusters at k=3", val_behavior},
      {"10 val selection is target-independent", target_independence},
      {"11 run --config is byte-identical across executions", run_determinism},
      {"12 deflation keeps matrices symmetric psd", deflation_spectrum},
      {"13 full pipeline scale smoke test (n=2000, m=16)", scale_smoke_test},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = Clock::now();
    std::string detail;
    bool ok = true;
    try {
      c.run();
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    std::printf("[%s] %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", c.name,
                seconds_since(start), detail.empty() ? "" : ": ",
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
