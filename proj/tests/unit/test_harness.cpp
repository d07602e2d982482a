#include <doctest.h>

#include <fstream>
#include <sstream>

#include "support/test_util.hpp"
#include "val/harness.hpp"

using namespace val;

namespace {

std::string small_config(const std::string& extra = "") {
  return "data.shape=blobs\n"
         "data.classes=3\n"
         "data.per_class=20\n"
         "data.separation=10\n"
         "data.noise=1\n"
         "data.seed=5\n"
         "strategies=val,random,ted,margin\n"
         "budgets=3,5\n"
         "repeats=2\n"
         "master_seed=17\n" +
         extra;
}

}  // namespace

TEST_CASE("parse_config_text defaults and overrides") {
  const ExperimentConfig cfg = parse_config_text(small_config());
  CHECK(cfg.data.generated);
  CHECK(cfg.data.classes == 3);
  CHECK(cfg.strategies.size() == 4);
  CHECK(cfg.budgets == std::vector<int>{3, 5});
  CHECK(cfg.repeats == 2);
  CHECK(cfg.master_seed == 17);
  CHECK(cfg.kernel_gamma_auto);
  CHECK(cfg.sparsify.mu == 0.1);
  CHECK(cfg.lambda == 1e-3);
  CHECK(!cfg.record_timing);

  const ExperimentConfig cfg2 = parse_config_text(small_config(
      "kernel.gamma=0.25\nsparsify.variant=ted\nlambda=0.5\nrecord_timing=true\n"));
  CHECK(!cfg2.kernel_gamma_auto);
  CHECK(cfg2.kernel.gamma == 0.25);
  CHECK(cfg2.sparsify.variant == ScoreVariant::ted);
  CHECK(cfg2.lambda == 0.5);
  CHECK(cfg2.record_timing);
}

TEST_CASE("parse_config_text rejects malformed input") {
  CHECK_THROWS_AS(parse_config_text("strategies=val\nbudgets=1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(small_config("unknown.key=1\n")), ConfigError);
  CHECK_THROWS_AS(parse_config_text(small_config("repeats=0\n")), ConfigError);
  CHECK_THROWS_AS(parse_config_text(small_config("kernel.kind=poly\n")), ConfigError);
  CHECK_THROWS_AS(
      parse_config_text("data.shape=blobs\nstrategies=val\nbudgets=5,4\n"),
      ConfigError);
  CHECK_THROWS_AS(parse_config_text(small_config("this is not a kv line\n")),
                  ConfigError);
  CHECK_THROWS_AS(
      parse_config_text("data.shape=blobs\nstrategies=val,val\nbudgets=2\n"),
      ConfigError);
}

TEST_CASE("run_experiment produces sorted complete rows") {
  const ExperimentConfig cfg = parse_config_text(small_config());
  const ErrorCurve curve = run_experiment(cfg);
  CHECK(curve.rows.size() == 4 * 2 * 2);  // strategies x repeats x budgets
  for (size_t i = 1; i < curve.rows.size(); ++i) {
    const CurveRow& a = curve.rows[i - 1];
    const CurveRow& b = curve.rows[i];
    const bool sorted = a.strategy < b.strategy ||
                        (a.strategy == b.strategy &&
                         (a.seed < b.seed || (a.seed == b.seed && a.budget < b.budget)));
    CHECK(sorted);
  }
  for (const CurveRow& r : curve.rows) {
    CHECK(r.error_rate >= 0.0);
    CHECK(r.error_rate <= 1.0);
    CHECK(r.queries_used == r.budget);  // seeds are uncharged
    CHECK(r.wall_ms == 0);              // timing off by default
  }
}

TEST_CASE("run_experiment is deterministic across executions") {
  const ExperimentConfig cfg = parse_config_text(small_config());
  const ErrorCurve a = run_experiment(cfg);
  const ErrorCurve b = run_experiment(cfg);
  REQUIRE(a.rows.size() == b.rows.size());
  for (size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].strategy == b.rows[i].strategy);
    CHECK(a.rows[i].error_rate == b.rows[i].error_rate);
    CHECK(a.rows[i].queries_used == b.rows[i].queries_used);
  }
}

TEST_CASE("random at the full pool budget equals full supervision") {
  // Budget n - c: the random strategy exhausts the unlabeled pool, so the
  // trained model sees every point, the floor for the dataset.
  const Dataset ds = gen_synthetic(SyntheticShape::blobs, 2, 8, 6, 1.5, 21);
  const int n = ds.n();
  const int c = ds.num_classes();
  std::ostringstream cfg_text;
  cfg_text << "data.shape=blobs\ndata.classes=2\ndata.per_class=8\n"
           << "data.separation=6\ndata.noise=1.5\ndata.seed=21\n"
           << "strategies=random\nbudgets=" << (n - c) << "\nrepeats=2\n"
           << "master_seed=3\n";
  const ErrorCurve curve = run_experiment(parse_config_text(cfg_text.str()));

  const KernelSpec kernel = make_rbf(median_heuristic_gamma(ds.features));
  const RlscModel full = train_rlsc(ds.features, ds.labels, kernel, 1e-3, c);
  const double floor_err = error_rate(predict(full, ds.features).labels, ds.labels);
  for (const CurveRow& r : curve.rows) CHECK(r.error_rate == floor_err);
}

TEST_CASE("csv round trip reproduces the curve exactly") {
  const ExperimentConfig cfg = parse_config_text(small_config());
  const ErrorCurve curve = run_experiment(cfg);
  testutil::TempFile f("curve");
  emit_csv(curve, f.path());

  std::ifstream in(f.path());
  std::string header;
  std::getline(in, header);
  CHECK(header == "strategy,seed,budget,error_rate,queries_used,wall_ms");

  const ErrorCurve back = load_curve_csv(f.path());
  REQUIRE(back.rows.size() == curve.rows.size());
  for (size_t i = 0; i < curve.rows.size(); ++i) {
    CHECK(back.rows[i].strategy == curve.rows[i].strategy);
    CHECK(back.rows[i].seed == curve.rows[i].seed);
    CHECK(back.rows[i].budget == curve.rows[i].budget);
    CHECK(back.rows[i].error_rate == curve.rows[i].error_rate);
    CHECK(back.rows[i].queries_used == curve.rows[i].queries_used);
    CHECK(back.rows[i].wall_ms == curve.rows[i].wall_ms);
  }
}

TEST_CASE("one-row curve emits a two-line csv") {
  ErrorCurve curve;
  curve.rows.push_back({"val", 0, 3, 0.125, 3, 0});
  testutil::TempFile f("onerow");
  emit_csv(curve, f.path());
  std::ifstream in(f.path());
  std::string line;
  int lines = 0;
  while (std::getline(in, line))
    if (!line.empty()) ++lines;
  CHECK(lines == 2);
}

TEST_CASE("svg has one polyline per strategy and means match the rows") {
  const ExperimentConfig cfg = parse_config_text(small_config());
  ErrorCurve curve = run_experiment(cfg);
  testutil::TempFile f("svg");
  emit_svg(curve, f.path());

  std::ifstream in(f.path());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string svg = buf.str();
  size_t count = 0, pos = 0;
  while ((pos = svg.find("<polyline", pos)) != std::string::npos) {
    ++count;
    pos += 9;
  }
  CHECK(count == 4);
  CHECK(svg.find("Number of queries") != std::string::npos);
  CHECK(svg.find("Error rate") != std::string::npos);

  // The svg's aggregation equals the arithmetic mean of per-seed rows.
  for (const MeanPoint& p : mean_curve(curve)) {
    double sum = 0;
    long cnt = 0;
    for (const CurveRow& r : curve.rows)
      if (r.strategy == p.strategy && r.budget == p.budget) {
        sum += r.error_rate;
        ++cnt;
      }
    CHECK(cnt == cfg.repeats);
    CHECK(p.mean_error == sum / cnt);
  }
}

TEST_CASE("experiments run from a csv source with scaling") {
  const Dataset ds = gen_synthetic(SyntheticShape::blobs, 3, 15, 9, 1, 44);
  testutil::TempFile f("csvsrc");
  save_csv(ds, f.path());

  const ErrorCurve curve = run_experiment(parse_config_text(
      "data.csv=" + f.path() +
      "\ndata.label_col=label\nscale_features=true\n"
      "strategies=val,margin\nbudgets=3\nrepeats=2\nmaster_seed=6\n"));
  CHECK(curve.rows.size() == 4);
  for (const CurveRow& r : curve.rows) {
    CHECK(r.queries_used == 3);
    CHECK(r.error_rate >= 0.0);
    CHECK(r.error_rate <= 1.0);
  }
}

TEST_CASE("infeasible budgets name the offending strategy") {
  try {
    run_experiment(parse_config_text(
        "data.shape=blobs\ndata.classes=2\ndata.per_class=10\ndata.seed=1\n"
        "strategies=val\nbudgets=15\n"));
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("val") != std::string::npos);
  }
}

TEST_CASE("holdout evaluation excludes trained points") {
  const ErrorCurve curve =
      run_experiment(parse_config_text(small_config("holdout_only=true\n")));
  for (const CurveRow& r : curve.rows) {
    CHECK(r.error_rate >= 0.0);
    CHECK(r.error_rate <= 1.0);
  }
}

TEST_CASE("record_timing fills wall_ms") {
  const ErrorCurve curve =
      run_experiment(parse_config_text(small_config("record_timing=true\n")));
  for (const CurveRow& r : curve.rows) CHECK(r.wall_ms >= 0);
}
