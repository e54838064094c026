#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct Result {
  int exit_code = -1;
  std::string out;
};

Result run_cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " '" RSBF_CLI_PATH "' " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t data_rows(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::size_t rows = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    ++rows;
  }
  return rows;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("rsbf_cli_test_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, PlanPrintsBalancedAndOverrides) {
  const auto r = run_cli("plan --memory-bits 16384 --fpr 0.1");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("k_raw=5.020078"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("balanced  k=3 s=5461"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("low-fnr   k=1 s=16384"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("low-fpr   k=5 s=3276"), std::string::npos) << r.out;
}

TEST_F(CliTest, ValidationErrorsExitTwo) {
  EXPECT_EQ(run_cli("plan --memory-bits 16384 --fpr 0.9").exit_code, 2);
  EXPECT_EQ(run_cli("run --length 10 --distinct 2").exit_code, 2);
  EXPECT_EQ(run_cli("run --length 10 --distinct 0.5 --memory-bits 5").exit_code, 2);
  EXPECT_EQ(run_cli("run --length 10 --distinct 0.5 --algo nope").exit_code, 2);
  EXPECT_EQ(run_cli("run --no-such-flag").exit_code, 2);
  EXPECT_EQ(run_cli("plan --memory-bits 16384 --fpr 0.1", "RSBF_SEED=abc").exit_code, 2);
}

TEST_F(CliTest, IoErrorsExitThree) {
  EXPECT_EQ(run_cli("run --input " + path("missing.bin")).exit_code, 3);
  std::ofstream(path("partial.bin"), std::ios::binary) << std::string(12, 'x');
  EXPECT_EQ(run_cli("run --input " + path("partial.bin")).exit_code, 3);
}

TEST_F(CliTest, GenWritesRecordsAndSidecar) {
  const auto r = run_cli("gen --length 100000 --distinct 1 --seed 3 --out " + path("s.bin"));
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(fs::file_size(path("s.bin")), 800000U);
  const std::string meta = slurp(path("s.bin.meta"));
  EXPECT_NE(meta.find("length=100000"), std::string::npos) << meta;
  EXPECT_NE(meta.find("empirical_distinct_fraction=1\n"), std::string::npos) << meta;

  ASSERT_EQ(run_cli("gen --length 100000 --distinct 0.76 --seed 3 --out " + path("u.bin")).exit_code, 0);
  EXPECT_NE(slurp(path("u.bin.meta")).find("universe=173462"), std::string::npos);
}

TEST_F(CliTest, RunReportsAreByteIdentical) {
  ASSERT_EQ(run_cli("gen --length 20000 --distinct 0.6 --seed 4 --out " + path("in.bin")).exit_code, 0);
  for (const char* algo : {"rsbf", "bloom", "sbf"}) {
    const std::string base = "run --algo " + std::string(algo) + " --input " + path("in.bin") + " --seed 9";
    ASSERT_EQ(run_cli(base + " --report " + path("a.csv")).exit_code, 0);
    ASSERT_EQ(run_cli(base + " --report " + path("b.csv")).exit_code, 0);
    EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv"))) << algo;
    EXPECT_EQ(data_rows(slurp(path("a.csv"))), 21U);
  }
}

TEST_F(CliTest, SeedComesFromEnvironment) {
  const std::string base = "run --length 5000 --distinct 0.5 --report -";
  const auto flag = run_cli(base + " --seed 17");
  const auto env = run_cli(base, "RSBF_SEED=17");
  ASSERT_EQ(flag.exit_code, 0);
  EXPECT_EQ(flag.out, env.out);
  EXPECT_NE(flag.out, run_cli(base + " --seed 18").out);
}

TEST_F(CliTest, LongRunHasOneRowPerWindowPlusSummary) {
  const auto r = run_cli("run --length 3000000 --distinct 0.49 --report -");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(data_rows(r.out), 3001U);
}

TEST_F(CliTest, LineInput) {
  std::ofstream(path("l.txt")) << "a\nb\na\nc\nb\n";
  const auto r = run_cli("run --format lines --input " + path("l.txt") + " --report -");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("\n5,0,0,3,2,0,0,"), std::string::npos) << r.out;
}

TEST_F(CliTest, CompareGrid) {
  const auto r =
      run_cli("compare --length 20000 --distinct 0.76 --memories 4096,16384 --algos rsbf,sbf,bloom --report -");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(data_rows(r.out), 6U);
  EXPECT_NE(r.out.find("algorithm,memory_bits,num_hashes,slots,"), std::string::npos) << r.out;
}

TEST_F(CliTest, PredictFlagsValidity) {
  const auto r = run_cli("predict --m 1000000 --s 5461 --k 3 --universe 1000000");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("fpr_bound              0.361852"), std::string::npos) << r.out;
  EXPECT_NE(run_cli("predict --m 10 --s 5461 --k 3 --universe 100").out.find("outside-validity"),
            std::string::npos);
}

}  // namespace
