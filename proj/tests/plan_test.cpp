#include "rsbf/plan.hpp"

#include "rsbf/errors.hpp"
#include "rsbf/theory.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace {

TEST(PlanTest, SmallBudget) {
  const auto p = rsbf::plan(16384, 0.1, 0.03);
  EXPECT_NEAR(p.k_raw, 5.020, 1e-3);
  EXPECT_EQ(p.num_filters, 3U);
  EXPECT_EQ(p.filter_bits, 5461U);
  EXPECT_EQ(p.memory_bits, 16384U);
  EXPECT_DOUBLE_EQ(p.p_star, 0.03);
}

TEST(PlanTest, LargeBudget) {
  const auto p = rsbf::plan(4194304, 0.1, 0.03);
  EXPECT_EQ(p.num_filters, 3U);
  EXPECT_EQ(p.filter_bits, 1398101U);
}

TEST(PlanTest, ThresholdNearUpperLimitGivesOneFilter) {
  const auto p = rsbf::plan(1000, std::nextafter(1.0 - 1.0 / std::numbers::e, 0.0), 0.03);
  EXPECT_NEAR(p.k_raw, 1.0, 1e-12);
  EXPECT_EQ(p.num_filters, 1U);
  EXPECT_EQ(p.filter_bits, 1000U);
}

TEST(PlanTest, Overrides) {
  const auto low_fnr = rsbf::plan(16384, 0.1, 0.03, rsbf::PlanMode::kLowFnr);
  EXPECT_EQ(low_fnr.num_filters, 1U);
  EXPECT_EQ(low_fnr.filter_bits, 16384U);
  const auto low_fpr = rsbf::plan(16384, 0.1, 0.03, rsbf::PlanMode::kLowFpr);
  EXPECT_EQ(low_fpr.num_filters, 5U);
  EXPECT_EQ(low_fpr.filter_bits, 3276U);
}

TEST(PlanTest, InvariantsHoldAcrossGrid) {
  for (std::uint64_t m : {6ULL, 100ULL, 16384ULL, 1ULL << 30}) {
    for (double fpr : {1e-9, 1e-3, 0.05, 0.1, 0.5, 0.6}) {
      const auto p = rsbf::plan(m < 64 ? 64 : m, fpr, 0.03);
      EXPECT_GE(p.num_filters, 1U);
      EXPECT_GE(p.filter_bits, 2U);
      EXPECT_LE(p.num_filters * p.filter_bits, p.memory_bits);
      // Single source of truth: the planner's k is the theory module's rule.
      EXPECT_EQ(p.num_filters, rsbf::theory::planned_k(rsbf::theory::plan_k_raw(fpr)));
    }
  }
}

TEST(PlanTest, RejectsUnplannableThreshold) {
  EXPECT_THROW(rsbf::plan(100, 0.9, 0.03), rsbf::ValidationError);
  EXPECT_THROW(rsbf::plan(100, 1.0 - 1.0 / std::numbers::e, 0.03), rsbf::ValidationError);
  EXPECT_THROW(rsbf::plan(100, 0.0, 0.03), rsbf::ValidationError);
}

TEST(PlanTest, RejectsTinyMemory) {
  EXPECT_THROW(rsbf::plan(1, 0.5, 0.03), rsbf::ValidationError);
  EXPECT_THROW(rsbf::plan(5, 0.1, 0.03), rsbf::ValidationError);  // k=3 needs M >= 6
  EXPECT_NO_THROW(rsbf::plan(6, 0.1, 0.03));
}

TEST(PlanTest, RejectsBadPStar) {
  EXPECT_THROW(rsbf::plan(16384, 0.1, 0.0), rsbf::ValidationError);
  EXPECT_THROW(rsbf::plan(16384, 0.1, 1.0), rsbf::ValidationError);
}

TEST(PlanTest, ExplicitK) {
  const auto p = rsbf::plan_with_k(100, 4, 0.9, 0.03);
  EXPECT_EQ(p.num_filters, 4U);
  EXPECT_EQ(p.filter_bits, 25U);
  EXPECT_THROW(rsbf::plan_with_k(100, 0, 0.1, 0.03), rsbf::ValidationError);
  EXPECT_THROW(rsbf::plan_with_k(7, 4, 0.1, 0.03), rsbf::ValidationError);
}

}  // namespace
