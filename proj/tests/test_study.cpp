#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "ndqmc/study.hpp"

using namespace ndqmc;

namespace {

ExperimentConfig small_success_config() {
  ExperimentConfig cfg;
  cfg.spec = SampleSpec::lhs(32, 2, 5);
  cfg.trials = 200;
  cfg.study = StudyKind::SuccessProb;
  cfg.thresholds = {3.0, 4.0};
  return cfg;
}

}  // namespace

TEST_CASE("success study passes and is threading-invariant") {
  auto cfg = small_success_config();
  cfg.threads = 1;
  const auto seq = run_success_study(cfg);
  cfg.threads = 4;
  const auto par = run_success_study(cfg);
  REQUIRE(seq.rows.size() == 2);
  CHECK(seq.all_pass);
  for (std::size_t i = 0; i < seq.rows.size(); ++i) {
    CHECK(seq.rows[i].empirical == par.rows[i].empirical);
    CHECK(seq.rows[i].theoretical == par.rows[i].theoretical);
  }
}

TEST_CASE("success study: 1-d LHS at c=1 always succeeds") {
  // D* of a 1-d LHS is at most 1/64, far below 1 * sqrt(1/64) = 1/8
  ExperimentConfig cfg;
  cfg.spec = SampleSpec::lhs(64, 1, 2);
  cfg.trials = 500;
  cfg.study = StudyKind::SuccessProb;
  cfg.thresholds = {1.0};
  const auto res = run_success_study(cfg);
  CHECK(res.rows[0].empirical == 1.0);
  CHECK(res.all_pass);
}

TEST_CASE("success study with cover upper bound stays conservative") {
  auto cfg = small_success_config();
  cfg.use_cover = true;
  cfg.delta = 0.05;
  const auto res = run_success_study(cfg);
  CHECK(res.all_pass);
}

TEST_CASE("tail study: verdicts pass and t > N gives zero frequency") {
  ExperimentConfig cfg;
  cfg.spec = SampleSpec::monte_carlo(100, 1, 3);
  cfg.trials = 2000;
  cfg.study = StudyKind::Tail;
  cfg.thresholds = {1, 5, 10, 101};
  cfg.region = BoxDifference::anchored({0.5});
  const auto res = run_tail_study(cfg);
  CHECK(res.all_pass);
  CHECK(res.rows.back().empirical == 0.0);
  // frozen bound for t=10: 2 exp(-2)
  CHECK(res.rows[2].theoretical <= 2 * std::exp(-2.0) + 1e-12);
}

TEST_CASE("tail study rejects degenerate regions") {
  ExperimentConfig cfg;
  cfg.spec = SampleSpec::monte_carlo(10, 1, 3);
  cfg.study = StudyKind::Tail;
  cfg.thresholds = {1};
  cfg.region = BoxDifference::anchored({0.0});
  CHECK_THROWS_AS(run_tail_study(cfg), std::invalid_argument);
}

TEST_CASE("projection study: LHS projections below 1/N, centered exactly 1/(2N)") {
  ExperimentConfig cfg;
  cfg.spec = SampleSpec::lhs(100, 2, 7);
  cfg.trials = 300;
  cfg.study = StudyKind::Projection;
  const auto res = run_projection_study(cfg);
  CHECK(res.all_pass);
  CHECK(res.rows[0].empirical <= 0.01 * (1 + 1e-12));
  CHECK(res.rows[1].empirical > 0.02);  // Monte Carlo contrast median

  ExperimentConfig centered = cfg;
  centered.spec = SampleSpec::centered_lhs(100, 1, 7);
  centered.trials = 50;
  const auto cres = run_projection_study(centered);
  CHECK(cres.rows[0].empirical == Catch::Approx(1.0 / 200).margin(1e-14));
}

TEST_CASE("cover sandwich study: no violations") {
  ExperimentConfig cfg;
  cfg.spec = SampleSpec::lhs(32, 2, 11);
  cfg.trials = 100;
  cfg.study = StudyKind::CoverSandwich;
  cfg.delta = 0.05;
  const auto res = run_cover_sandwich_study(cfg);
  CHECK(res.all_pass);
  CHECK(res.rows[0].empirical <= 0.05 + 1e-12);
}

TEST_CASE("negdep study against the dependence guarantee") {
  ExperimentConfig cfg;
  cfg.spec = SampleSpec::lhs(4, 1, 13);
  cfg.trials = 5000;
  cfg.study = StudyKind::NegDep;
  const auto res = run_negdep_study(cfg, {BoxDifference::anchored({0.5})});
  CHECK(res.all_pass);
  CHECK(res.rows[0].theoretical == 1.0);
}

TEST_CASE("emit: exact CSV header, deterministic bytes, JSON round trip") {
  auto cfg = small_success_config();
  cfg.trials = 50;
  const auto res = run_success_study(cfg);

  std::stringstream a, b;
  write_result(a, res, OutputFormat::Csv);
  write_result(b, run_success_study(cfg), OutputFormat::Csv);
  CHECK(a.str() == b.str());
  CHECK(a.str().substr(0, a.str().find('\n')) ==
        "study,kind,n,d,d_lhs,seed,trials,threshold,empirical,stderr,theoretical,verdict,seconds");

  std::stringstream j;
  write_result(j, res, OutputFormat::Json);
  const auto parsed = nlohmann::json::parse(j.str());
  CHECK(parsed["study"] == "success_prob");
  CHECK(parsed["kind"] == "lhs");
  CHECK(parsed["n"] == 32);
  CHECK(parsed["rows"].size() == 2);
  CHECK(parsed["rows"][0]["verdict"] == "pass");
  // without --timing the seconds column is pinned to zero
  CHECK(parsed["seconds"] == 0.0);
}

TEST_CASE("config validation") {
  ExperimentConfig cfg;
  cfg.spec = SampleSpec::lhs(8, 1, 0);
  cfg.study = StudyKind::SuccessProb;
  cfg.thresholds = {};
  CHECK_THROWS_AS(run_success_study(cfg), std::invalid_argument);
  cfg.thresholds = {3.0};
  cfg.trials = 0;
  CHECK_THROWS_AS(run_success_study(cfg), std::invalid_argument);
}
