#include <gtest/gtest.h>

#include <cmath>

#include "sobolab/experiments.hpp"
#include "sobolab/io.hpp"
#include "sobolab/stieltjes.hpp"

using namespace sobolab;

namespace {

const Modulus kThird = Modulus::power(1.0 / 3.0);

ObstructionConfig small_run() {
  ObstructionConfig cfg;
  cfg.blocks = {1, 2, 3};
  cfg.knots = 8;
  cfg.budget = 120;
  cfg.restarts = 2;
  cfg.audit_stride = 10;
  return cfg;
}

}  // namespace

TEST(VerifyAll, DefaultConfigPasses) {
  const VerifyReport r = verify_all(VerifyConfig{});
  for (const auto& s : r.suites) EXPECT_TRUE(s.passed) << s.name << ": " << s.witness;
  EXPECT_TRUE(r.passed());
}

TEST(Suites, MutationNamesTheInterval) {
  const SuiteResult r = stieltjes_suite(kThird, 3, Mutation::halve_v_weights);
  EXPECT_FALSE(r.passed);
  EXPECT_NE(r.witness.find("k=1"), std::string::npos) << r.witness;
}

TEST(Suites, EmptyConstructionIsVacuous) {
  const SuiteResult r = stieltjes_suite(kThird, 0);
  EXPECT_TRUE(r.passed);
  EXPECT_TRUE(r.warning);
}

TEST(Suites, SequenceUpToEightBlocks) {
  const SuiteResult r = sequence_suite(kThird, 8);
  EXPECT_TRUE(r.passed) << r.witness;
}

TEST(Suites, LooseLipschitzConstantFails) {
  EXPECT_FALSE(lipschitz_suite(kThird, 3, 0.5).passed);
}

TEST(Lacunary, TermByTerm) {
  EXPECT_NEAR(lacunary_fixture(0).seminorm_sq, 1.0, 1e-15);
  EXPECT_NEAR(lacunary_fixture(9).seminorm_sq, 10.0, 1e-12);
  for (int k = 1; k <= 12; ++k) {
    EXPECT_NEAR(lacunary_fixture(k).seminorm_sq - lacunary_fixture(k - 1).seminorm_sq, 1.0, 1e-12);
  }
}

TEST(Lacunary, LipHalfRatioStaysBounded) {
  double largest = 0.0;
  for (int k = 0; k <= 12; ++k) largest = std::max(largest, lacunary_fixture(k).lip_half_ratio);
  EXPECT_LT(largest, 10.0);
}

TEST(Lacunary, RejectsOutOfRange) {
  EXPECT_THROW(lacunary_fixture(-1), std::out_of_range);
  EXPECT_THROW(lacunary_fixture(17), std::out_of_range);
}

TEST(Obstruction, SmallRunHoldsEverything) {
  const auto records = run_obstruction(small_run());
  ASSERT_EQ(records.size(), 3u);
  double previous = 0.0;
  for (const auto& r : records) {
    EXPECT_EQ(r.violations, 0u);
    EXPECT_EQ(r.audit_failures, 0u);
    EXPECT_GT(r.audited, 0u);
    EXPECT_LE(r.evals, 120u);
    EXPECT_GE(r.min_product, r.sup_lower_bound);
    EXPECT_GE(r.sup_lower_bound - previous, (1.0 / 9.0) / kTwoPi - 1e-12);
    EXPECT_GE(r.sup_lower_bound, r.certified_bound);
    for (std::size_t i = 0; i < r.n_grid.size(); ++i) {
      EXPECT_GE(r.identity_products[i] * (1 + 1e-6), r.stieltjes[i] / kTwoPi);
      EXPECT_GE(r.achieved_products[i] * (1 + 1e-6), r.stieltjes[i] / kTwoPi);
    }
    previous = r.sup_lower_bound;
  }
  EXPECT_TRUE(obstruction_suite(records).passed);
}

TEST(Obstruction, BoundUsesExactStieltjesValues) {
  const auto records = run_obstruction(small_run());
  const TriangleSystem sys = build_system(kThird, 3);
  double best = 0.0;
  for (const std::int64_t n : truncation_grid(sys)) best = std::max(best, stieltjes_check(sys, n).value);
  EXPECT_DOUBLE_EQ(records.back().sup_lower_bound, best / kTwoPi);
}

TEST(Obstruction, Deterministic) {
  const auto a = run_obstruction(small_run());
  const auto b = run_obstruction(small_run());
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(to_json(a[i]).dump(), to_json(b[i]).dump());
  }
  EXPECT_EQ(obstruction_csv(a), obstruction_csv(b));
}

TEST(Obstruction, SeedChangesTheSearch) {
  ObstructionConfig cfg = small_run();
  cfg.blocks = {2};
  const auto a = run_obstruction(cfg);
  cfg.seed = 8;
  const auto b = run_obstruction(cfg);
  EXPECT_NE(a[0].best_homeo, b[0].best_homeo);
  EXPECT_EQ(a[0].sup_lower_bound, b[0].sup_lower_bound);
}

TEST(Obstruction, ThresholdReachedWithinPredictedBlocks) {
  // With a per-block increment of 1/(18 pi), a threshold T needs at most
  // 2 + ceil(2 pi * 9 * 2 * T) blocks; check T = 0.1.
  const double threshold = 0.1;
  const int predicted = 2 + static_cast<int>(std::ceil(kTwoPi * 9 * 2 * threshold));
  ObstructionConfig cfg = small_run();
  cfg.blocks.clear();
  for (int j = 1; j <= std::min(predicted, 5); ++j) cfg.blocks.push_back(j);
  cfg.budget = 2;
  cfg.restarts = 1;
  const auto records = run_obstruction(cfg);
  EXPECT_GT(records.back().sup_lower_bound, threshold);
}

TEST(Obstruction, RejectsBadConfig) {
  ObstructionConfig cfg = small_run();
  cfg.knots = 1;
  EXPECT_THROW(run_obstruction(cfg), std::invalid_argument);
  cfg = small_run();
  cfg.budget = 1;
  EXPECT_THROW(run_obstruction(cfg), std::invalid_argument);
}

TEST(Config, FlatKeyValue) {
  const auto m = parse_config("# comment\nomega.alpha = 0.25\n\n blocks=3  # trailing\nout = runs/a\n");
  EXPECT_EQ(m.at("omega.alpha"), "0.25");
  EXPECT_EQ(m.at("blocks"), "3");
  EXPECT_EQ(m.at("out"), "runs/a");
  EXPECT_EQ(m.size(), 3u);
  EXPECT_THROW(parse_config("blocks 3\n"), std::invalid_argument);
  EXPECT_THROW(parse_config(" = 3\n"), std::invalid_argument);
  EXPECT_THROW(load_config("/nonexistent/dir/cfg.txt"), std::runtime_error);
}
