#include <doctest.h>

#include "support/test_util.hpp"
#include "val/classifier.hpp"
#include "val/dataset.hpp"

using namespace val;

TEST_CASE("load_csv encodes labels by first appearance") {
  testutil::TempFile f("labels");
  f.write("0,0,a\n1,0,a\n5,5,b\n");
  const Dataset ds = load_csv(f.path(), "3");
  CHECK(ds.n() == 3);
  CHECK(ds.m() == 2);
  CHECK(ds.labels == std::vector<int>{0, 0, 1});
  CHECK(ds.features(2, 0) == 5.0);
}

TEST_CASE("load_csv rejects a non-numeric feature cell with the row number") {
  testutil::TempFile f("badcell");
  f.write("1,2,a\n3,oops,b\n");
  try {
    load_csv(f.path(), "3");
    FAIL("expected MalformedInput");
  } catch (const MalformedInput& e) {
    CHECK(e.row() == 2);
  }
}

TEST_CASE("load_csv auto-detects a header row and resolves names") {
  testutil::TempFile f("header");
  f.write("x,y,cls\n1,2,pos\n3,4,neg\n1,1,pos\n");
  const Dataset by_name = load_csv(f.path(), "cls");
  CHECK(by_name.n() == 3);
  CHECK(by_name.labels == std::vector<int>{0, 1, 0});
  const Dataset by_index = load_csv(f.path(), "3");
  CHECK(by_index.labels == by_name.labels);
  const Dataset by_default = load_csv(f.path());
  CHECK(by_default.labels == by_name.labels);
}

TEST_CASE("load_csv errors") {
  testutil::TempFile f("errs");
  f.write("1,2,a\n");
  CHECK_THROWS_AS(load_csv(f.path(), "9"), ConfigError);
  CHECK_THROWS_AS(load_csv(f.path(), "nope"), ConfigError);
  CHECK_THROWS_AS(load_csv("/nonexistent/x.csv"), IoError);

  testutil::TempFile ragged("ragged");
  ragged.write("1,2,a\n1,2\n");
  CHECK_THROWS_AS(load_csv(ragged.path(), "3"), MalformedInput);
}

TEST_CASE("save/load round trip is the identity") {
  const Dataset ds = gen_synthetic(SyntheticShape::spirals, 3, 17, 2.5, 0.3, 99);
  testutil::TempFile f("roundtrip");
  save_csv(ds, f.path());
  const Dataset back = load_csv(f.path(), "3");
  REQUIRE(back.n() == ds.n());
  REQUIRE(back.m() == ds.m());
  CHECK(back.labels == ds.labels);
  CHECK(back.features == ds.features);  // 17 significant digits are exact
}

TEST_CASE("gen_synthetic is deterministic and balanced") {
  const Dataset a = gen_synthetic(SyntheticShape::blobs, 2, 5, 10, 1, 7);
  const Dataset b = gen_synthetic(SyntheticShape::blobs, 2, 5, 10, 1, 7);
  CHECK(a.features == b.features);
  CHECK(a.labels == b.labels);

  const Dataset c = gen_synthetic(SyntheticShape::blobs, 3, 4, 10, 1, 7);
  CHECK(c.n() == 12);
  std::vector<int> counts(3, 0);
  for (int l : c.labels) ++counts[static_cast<size_t>(l)];
  CHECK(counts == std::vector<int>{4, 4, 4});

  CHECK(a.features != gen_synthetic(SyntheticShape::blobs, 2, 5, 10, 1, 8).features);
}

TEST_CASE("gen_synthetic validates counts") {
  CHECK_THROWS_AS(gen_synthetic(SyntheticShape::blobs, 1, 5, 1, 1, 0), ConfigError);
  CHECK_THROWS_AS(gen_synthetic(SyntheticShape::blobs, 2, 0, 1, 1, 0), ConfigError);
  CHECK_THROWS_AS(gen_synthetic(SyntheticShape::blobs, 2, 5, 1, -1, 0), ConfigError);
}

TEST_CASE("well-separated blobs are nearest-centroid separable") {
  const Dataset ds = gen_synthetic(SyntheticShape::blobs, 2, 40, 100, 1, 3);
  Matrix centroids = Matrix::Zero(2, 2);
  std::vector<int> counts(2, 0);
  for (int i = 0; i < ds.n(); ++i) {
    centroids.row(ds.labels[static_cast<size_t>(i)]) += ds.features.row(i);
    ++counts[static_cast<size_t>(ds.labels[static_cast<size_t>(i)])];
  }
  for (int c = 0; c < 2; ++c) centroids.row(c) /= counts[static_cast<size_t>(c)];
  const std::vector<int> pred = knn_predict(centroids, {0, 1}, ds.features, 1);
  CHECK(error_rate(pred, ds.labels) == 0.0);
}

TEST_CASE("oracle counts unique queries against the budget") {
  const Dataset ds = gen_synthetic(SyntheticShape::blobs, 2, 3, 5, 0.1, 1);
  LabelOracle oracle(ds, 2);
  CHECK(oracle.query(0) == ds.labels[0]);
  CHECK(oracle.query(0) == ds.labels[0]);  // repeat is free
  CHECK(oracle.queries_used() == 1);
  oracle.query(3);
  CHECK(oracle.queries_used() == 2);
  CHECK(oracle.query(0) == ds.labels[0]);  // still free
  CHECK_THROWS_AS(oracle.query(1), BudgetExceeded);
  CHECK(oracle.queries_used() == 2);
  CHECK_THROWS_AS(oracle.query(99), ShapeError);
}

TEST_CASE("oracle without budget never throws BudgetExceeded") {
  const Dataset ds = gen_synthetic(SyntheticShape::rings, 2, 4, 1, 0.1, 2);
  LabelOracle oracle(ds);
  for (int i = 0; i < ds.n(); ++i) oracle.query(i);
  CHECK(oracle.queries_used() == ds.n());
}
