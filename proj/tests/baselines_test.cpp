#include "rsbf/baselines.hpp"

#include "rsbf/errors.hpp"
#include "rsbf/stream.hpp"
#include "rsbf/theory.hpp"

#include <gtest/gtest.h>

#include <random>

namespace {

using rsbf::ClassicBloom;
using rsbf::StableBloom;
using rsbf::SbfConfig;
using rsbf::Verdict;

std::string element(std::uint64_t v) { return rsbf::encode_record(v); }

TEST(ClassicBloomTest, NeverForgets) {
  ClassicBloom bloom(4096, 3, 1);
  std::mt19937_64 rng(2);
  std::vector<std::uint64_t> inserted;
  for (int i = 0; i < 2000; ++i) {
    inserted.push_back(rng() % 5000);
    bloom.process(element(inserted.back()));
  }
  for (auto v : inserted) EXPECT_EQ(bloom.probe(element(v)), Verdict::kDuplicate);
  EXPECT_EQ(bloom.inserted_count(), 2000U);
}

TEST(ClassicBloomTest, FreshProbeRateMatchesClosedForm) {
  constexpr std::size_t n = 10'000, m = 8 * n, k = 6;
  ClassicBloom bloom(m, k, 3);
  for (std::uint64_t i = 0; i < n; ++i) bloom.process(element(i));
  std::uint64_t hits = 0;
  constexpr std::uint64_t kProbes = 1'000'000;
  for (std::uint64_t i = 0; i < kProbes; ++i) hits += bloom.probe(element(n + i)) == Verdict::kDuplicate;
  const double measured = static_cast<double>(hits) / kProbes;
  const double predicted = rsbf::theory::classic_fpr(n, m, k);
  EXPECT_NEAR(measured / predicted, 1.0, 0.2) << measured << " vs " << predicted;
}

TEST(ClassicBloomTest, RejectsEmptyLayout) {
  EXPECT_THROW(ClassicBloom(0, 3, 1), rsbf::ValidationError);
  EXPECT_THROW(ClassicBloom(10, 0, 1), rsbf::ValidationError);
}

TEST(StableBloomTest, MemoryMapping) {
  const auto c = StableBloom::for_memory(16384, 3);
  EXPECT_EQ(c.cells, 5461U);
  EXPECT_EQ(c.cell_bits, 3U);
  EXPECT_EQ(StableBloom::default_decrements(3, 3), 21U);
  const StableBloom sbf(c, 1);
  EXPECT_EQ(sbf.decrements(), 21U);
  EXPECT_EQ(sbf.max_value(), 7);
}

TEST(StableBloomTest, CellsStayInRangeAndCountIsExact) {
  StableBloom sbf(SbfConfig{257, 2, 3, 5}, 4);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20000; ++i) {
    sbf.process(element(rng() % 600));
    if (i % 101 == 0) {
      std::uint64_t nonzero = 0;
      for (std::size_t c = 0; c < sbf.cells(); ++c) {
        ASSERT_LE(sbf.cell(c), sbf.max_value());
        nonzero += sbf.cell(c) != 0;
      }
      ASSERT_EQ(nonzero, sbf.ones_total());
    }
  }
}

TEST(StableBloomTest, ImmediateRepeatIsDuplicate) {
  // Every probed cell is set to Max after the decrements, so a repeat finds them all non-zero.
  StableBloom sbf(StableBloom::for_memory(16384, 3), 6);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20000; ++i) {
    const auto e = element(rng());
    sbf.process(e);
    ASSERT_EQ(sbf.process(e).verdict, Verdict::kDuplicate);
  }
}

// Long all-distinct streams drive the zero-cell fraction to the known
// stable point (1 / (1 + 1 / (P (1/k - 1/m))))^Max.
TEST(StableBloomTest, ZeroFractionStabilizes) {
  struct Case {
    SbfConfig config;
    double expected;
  };
  for (const auto& [config, expected] : {Case{{5461, 3, 3, 21}, 0.392507090383450462},
                                         Case{{5461, 3, 3, 10}, 0.159224886720527664},
                                         Case{{1000, 2, 2, 4}, 0.295703308554535918}}) {
    StableBloom sbf(config, 8);
    std::uint64_t next = 0;
    for (int i = 0; i < 200'000; ++i) sbf.process(element(next++));
    double acc = 0.0;
    constexpr int kSamples = 2000;
    for (int i = 0; i < kSamples; ++i) {
      for (int j = 0; j < 50; ++j) sbf.process(element(next++));
      acc += 1.0 - static_cast<double>(sbf.ones_total()) / static_cast<double>(sbf.cells());
    }
    EXPECT_NEAR(acc / kSamples, expected, 0.02) << "P=" << config.decrements;
  }
}

TEST(StableBloomTest, RejectsBadConfig) {
  EXPECT_THROW(StableBloom(SbfConfig{0, 3, 3, 0}, 1), rsbf::ValidationError);
  EXPECT_THROW(StableBloom(SbfConfig{10, 9, 3, 0}, 1), rsbf::ValidationError);
  EXPECT_THROW(StableBloom::for_memory(100, 3, 0), rsbf::ValidationError);
}

}  // namespace
