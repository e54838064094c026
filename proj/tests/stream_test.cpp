#include "rsbf/stream.hpp"

#include "rsbf/errors.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include <unistd.h>

namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("rsbf_stream_test_" + std::to_string(::getpid()))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path file(const std::string& name, std::string_view contents) const {
    const auto p = path_ / name;
    std::ofstream(p, std::ios::binary) << contents;
    return p;
  }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

double distinct_fraction(const rsbf::ElementStream& s) {
  std::uint64_t distinct = 0;
  for (bool dup : rsbf::duplicate_labels(s)) distinct += !dup;
  return static_cast<double>(distinct) / static_cast<double>(s.size());
}

TEST(RecordTest, LittleEndianRoundTrip) {
  const auto r = rsbf::encode_record(0x0102030405060708ULL);
  ASSERT_EQ(r.size(), rsbf::kRecordBytes);
  EXPECT_EQ(static_cast<unsigned char>(r[0]), 0x08);
  EXPECT_EQ(static_cast<unsigned char>(r[7]), 0x01);
  EXPECT_EQ(rsbf::decode_record(r), 0x0102030405060708ULL);
}

TEST(GenerateTest, ShapeAndDeterminism) {
  const rsbf::StreamSpec spec{1000, 50, 9};
  const auto a = rsbf::generate(spec);
  const auto b = rsbf::generate(spec);
  ASSERT_EQ(a.size(), 1000U);
  EXPECT_EQ(a.record_width(), rsbf::kRecordBytes);
  EXPECT_EQ(a.bytes(), b.bytes());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_LT(rsbf::decode_record(a[i]), 50U);
  EXPECT_NE(rsbf::generate({1000, 50, 10}).bytes(), a.bytes());
}

TEST(GenerateTest, UniverseOfOneRepeatsOneValue) {
  const auto s = rsbf::generate({100, 1, 3});
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(rsbf::decode_record(s[i]), 0U);
}

TEST(GenerateTest, WithoutReplacementIsAllDistinct) {
  const auto s = rsbf::generate({200'000, std::nullopt, 4});
  std::set<std::uint64_t> seen;
  for (std::size_t i = 0; i < s.size(); ++i) seen.insert(rsbf::decode_record(s[i]));
  EXPECT_EQ(seen.size(), s.size());
}

TEST(GenerateTest, RejectsEmpty) {
  EXPECT_THROW(rsbf::generate({0, 10, 1}), rsbf::ValidationError);
  EXPECT_THROW(rsbf::generate({10, 0, 1}), rsbf::ValidationError);
}

// Universe sizes solved independently by bisection at 40 digits.
TEST(SolveUniverseTest, FrozenValues) {
  EXPECT_EQ(rsbf::solve_universe(100'000, 0.76), 173462U);
  EXPECT_EQ(rsbf::solve_universe(10'000'000, 0.49), 6067397U);
  EXPECT_EQ(rsbf::solve_universe(3'000'000, 0.49), 1820219U);
  EXPECT_EQ(rsbf::solve_universe(10, 1.0), std::nullopt);
}

TEST(SolveUniverseTest, SmallestSufficientUniverse) {
  for (double d : {0.1, 0.3, 0.5, 0.76, 0.9, 0.99}) {
    const std::uint64_t u = *rsbf::solve_universe(50'000, d);
    EXPECT_GE(rsbf::expected_distinct_fraction(50'000, u), d);
    if (u > 1) EXPECT_LT(rsbf::expected_distinct_fraction(50'000, u - 1), d);
  }
}

TEST(SolveUniverseTest, RejectsOutOfRange) {
  EXPECT_THROW(rsbf::solve_universe(10, 0.0), rsbf::ValidationError);
  EXPECT_THROW(rsbf::solve_universe(10, 1.5), rsbf::ValidationError);
  EXPECT_THROW(rsbf::solve_universe(0, 0.5), rsbf::ValidationError);
}

TEST(SolveUniverseTest, EmpiricalFractionMatchesTarget) {
  const std::uint64_t u = *rsbf::solve_universe(100'000, 0.76);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    EXPECT_NEAR(distinct_fraction(rsbf::generate({100'000, u, seed})), 0.76, 0.01) << "seed " << seed;
  }
}

TEST(DuplicateLabelsTest, MatchesDefinition) {
  const auto s = rsbf::ElementStream::from_elements({"a", "b", "a", "", "b", "", "c"});
  EXPECT_EQ(rsbf::duplicate_labels(s), (std::vector<bool>{false, false, true, false, true, true, false}));
}

TEST(IngestTest, Lines) {
  TempDir dir;
  const auto s = rsbf::ingest_lines(dir.file("a.txt", "x\nyy\nx\r\nlast"));
  ASSERT_EQ(s.size(), 4U);
  EXPECT_EQ(s[0], "x");
  EXPECT_EQ(s[1], "yy");
  EXPECT_EQ(s[2], "x\r");
  EXPECT_EQ(s[3], "last");
  EXPECT_EQ(rsbf::ingest_lines(dir.file("b.txt", "x\n")).size(), 1U);
  EXPECT_EQ(rsbf::ingest_lines(dir.file("c.txt", "\n\n")).size(), 2U);
}

TEST(IngestTest, EmptyFileIsEmptyStream) {
  TempDir dir;
  EXPECT_TRUE(rsbf::ingest_lines(dir.file("e.txt", "")).empty());
  EXPECT_TRUE(rsbf::ingest_binary(dir.file("e.bin", "")).empty());
}

TEST(IngestTest, BinaryRecords) {
  TempDir dir;
  const auto s = rsbf::ingest_binary(dir.file("r.bin", std::string(24, '\x01')));
  EXPECT_EQ(s.size(), 3U);
  EXPECT_THROW(rsbf::ingest_binary(dir.file("p.bin", std::string(25, '\x01'))), rsbf::IoError);
  EXPECT_THROW(rsbf::ingest_binary(dir.path() / "missing.bin"), rsbf::IoError);
}

TEST(IngestTest, BinaryRoundTrip) {
  TempDir dir;
  const auto s = rsbf::generate({777, 100, 2});
  rsbf::write_binary(dir.path() / "g.bin", s);
  EXPECT_EQ(fs::file_size(dir.path() / "g.bin"), 777U * rsbf::kRecordBytes);
  EXPECT_EQ(rsbf::ingest_binary(dir.path() / "g.bin").bytes(), s.bytes());
}

}  // namespace
