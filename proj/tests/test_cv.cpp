#include <catch2/catch_amalgamated.hpp>

#include "support/synthetic.hpp"
#include "vgk/experiment/cv.hpp"

using namespace vgk;

namespace {

ExperimentConfig cf_config(int folds, std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.kernel = {{1.0, KernelConfig({EdgeType::CF}, 5, 2)}};
  cfg.C = 1.0;
  cfg.folds = folds;
  cfg.seed = seed;
  return cfg;
}

// all tasks share one ranking
Dataset constant_dataset(int n) {
  Dataset ds = testing::synthetic_dataset(n, 999);
  for (Ranking& r : ds.rankings) r = Ranking({2, 1, 3, 4});
  return ds;
}

} // namespace

TEST_CASE("constant-ranking dataset is predicted perfectly by both predictors") {
  const Dataset ds = constant_dataset(20);
  const CvRun run = cross_validate(ds, cf_config(5, 3), 3);
  CHECK(run.mean == 1.0);
  CHECK(run.default_mean == 1.0);
  CHECK(run.stddev == 0.0);
}

TEST_CASE("fold sizes differ by at most one and cover everything") {
  const Dataset ds = testing::synthetic_dataset(23, 5);
  const CvRun run = cross_validate(ds, cf_config(4, 11), 11);
  int total = 0, smallest = 1 << 20, largest = 0;
  for (const FoldResult& f : run.folds) {
    total += f.test_size;
    smallest = std::min(smallest, f.test_size);
    largest = std::max(largest, f.test_size);
  }
  CHECK(total == 23);
  CHECK(largest - smallest <= 1);
}

TEST_CASE("overall mean equals the arithmetic mean of fold means") {
  const Dataset ds = testing::synthetic_dataset(30, 7);
  const CvRun run = cross_validate(ds, cf_config(5, 1), 1);
  double mean = 0.0;
  for (const FoldResult& f : run.folds) mean += f.spearman;
  mean /= static_cast<double>(run.folds.size());
  CHECK(std::abs(run.mean - mean) <= 1e-12);
}

TEST_CASE("config validation") {
  const Dataset ds = testing::synthetic_dataset(6, 2);
  CHECK_THROWS_AS(cross_validate(ds, cf_config(7, 0), 0), Error);  // folds > N
  CHECK_THROWS_AS(cross_validate(ds, cf_config(1, 0), 0), Error);  // folds < 2
}

TEST_CASE("reports are byte-identical for equal inputs and seed") {
  const Dataset ds = testing::synthetic_dataset(24, 8);
  const ExperimentConfig cfg = cf_config(6, 42);
  const CvReport a = run_experiment(ds, cfg);
  const CvReport b = run_experiment(ds, cfg);
  CHECK(report_to_json(a).dump(2) == report_to_json(b).dump(2));
  const CvReport c = run_experiment(ds, cf_config(6, 43));
  CHECK(report_to_json(a).dump(2) != report_to_json(c).dump(2));
}

TEST_CASE("seed is recorded in the report") {
  const Dataset ds = testing::synthetic_dataset(12, 4);
  const CvReport r = run_experiment(ds, cf_config(3, 77));
  const nlohmann::json j = report_to_json(r);
  CHECK(j.at("config").at("seed").get<std::uint64_t>() == 77);
  CHECK(j.at("runs").size() == 1);
  CHECK(j.at("runs")[0].at("folds").size() == 3);
  // timings only appear on request
  CHECK_FALSE(j.at("runs")[0].at("folds")[0].contains("train_seconds"));
  const nlohmann::json jt = report_to_json(r, true);
  CHECK(jt.at("runs")[0].at("folds")[0].contains("train_seconds"));
}

TEST_CASE("repeated runs use derived seeds and aggregate across repeats") {
  const Dataset ds = testing::synthetic_dataset(18, 6);
  ExperimentConfig cfg = cf_config(3, 5);
  cfg.repeats = 3;
  const CvReport r = run_experiment(ds, cfg);
  REQUIRE(r.runs.size() == 3);
  CHECK(r.runs[0].seed == 5);
  CHECK(r.runs[1].seed == 6);
  CHECK(r.runs[2].seed == 7);
  double mean = 0.0;
  for (const CvRun& run : r.runs) mean += run.mean;
  mean /= 3.0;
  CHECK(r.mean == Catch::Approx(mean).margin(1e-12));
}

TEST_CASE("two-family synthetic experiment separates while the baseline cannot") {
  const Dataset ds = testing::synthetic_dataset(60, 10);
  const CvRun run = cross_validate(ds, cf_config(5, 9), 9);
  CHECK(run.mean >= 0.9);
  CHECK(run.default_mean <= 0.3);
}
