// rsbf: plan, generate, predict, run and compare streaming duplicate filters.
//
// Exit codes: 0 success, 2 validation error, 3 I/O error.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rsbf/errors.hpp"
#include "rsbf/plan.hpp"
#include "rsbf/runner.hpp"
#include "rsbf/stream.hpp"
#include "rsbf/theory.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("RSBF_SEED"); env != nullptr && *env != '\0') {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw rsbf::ValidationError(std::string("RSBF_SEED is not an unsigned integer: ") + env);
    }
  }
  return 1;
}

// Where a run's elements come from: a file, or a generated uniform stream.
struct InputOptions {
  std::string path;
  std::string format = "binary";
  std::uint64_t length = 0;
  double distinct = 0.0;
  std::uint64_t universe = 0;

  void add(CLI::App* cmd) {
    cmd->add_option("--input", path, "Input file");
    cmd->add_option("--format", format, "Input format: binary (8-byte records) or lines")
        ->check(CLI::IsMember({"binary", "lines"}));
    cmd->add_option("--length", length, "Generate a stream of this many elements instead of reading a file");
    cmd->add_option("--distinct", distinct, "Expected distinct fraction of the generated stream");
    cmd->add_option("--universe", universe, "Universe size of the generated stream");
  }

  rsbf::ElementStream load(std::uint64_t seed, std::string& description) const {
    if (!path.empty()) {
      description = format + ":" + path;
      return format == "lines" ? rsbf::ingest_lines(path) : rsbf::ingest_binary(path);
    }
    if (length == 0) throw rsbf::ValidationError("either --input or --length is required");
    rsbf::StreamSpec spec{length, std::nullopt, seed};
    if (universe != 0) {
      spec.universe = universe;
    } else if (distinct != 0.0) {
      spec.universe = rsbf::solve_universe(length, distinct);
    } else {
      throw rsbf::ValidationError("a generated stream needs --distinct or --universe");
    }
    description = "generated:length=" + std::to_string(length) + ",universe=" +
                  (spec.universe ? std::to_string(*spec.universe) : std::string("without-replacement")) +
                  ",seed=" + std::to_string(seed);
    return rsbf::generate(spec);
  }
};

struct FilterOptions {
  std::uint64_t memory_bits = 16384;
  double fpr = 0.1;
  double p_star = rsbf::kDefaultPStar;
  std::uint64_t seed = 1;
  std::size_t window = rsbf::kDefaultWindow;
  std::string mode = "balanced";
  std::uint64_t k = 0;
  unsigned sbf_cell_bits = 3;
  std::size_t sbf_decrements = 0;

  void add(CLI::App* cmd, bool with_memory) {
    if (with_memory) cmd->add_option("--memory-bits", memory_bits, "Total filter memory M in bits");
    cmd->add_option("--fpr", fpr, "Target FPR used to plan k");
    cmd->add_option("--p-star", p_star, "Insert-probability threshold for forced insertion");
    cmd->add_option("--seed", seed, "Run seed (default: $RSBF_SEED or 1)");
    cmd->add_option("--window", window, "Records per metrics window");
    cmd->add_option("--mode", mode, "Planner mode: balanced, low-fnr or low-fpr")
        ->check(CLI::IsMember({"balanced", "low-fnr", "low-fpr"}));
    cmd->add_option("--k", k, "Number of filters/hashes, overriding the planner");
    cmd->add_option("--sbf-cell-bits", sbf_cell_bits, "SBF counter width d");
    cmd->add_option("--sbf-decrements", sbf_decrements, "SBF decrements per element P (0: k * (2^d - 1))");
  }

  rsbf::RunConfig config() const {
    rsbf::RunConfig c;
    c.memory_bits = memory_bits;
    c.fpr_threshold = fpr;
    c.p_star = p_star;
    c.seed = seed;
    c.window_size = window;
    c.mode = mode == "low-fnr" ? rsbf::PlanMode::kLowFnr
             : mode == "low-fpr" ? rsbf::PlanMode::kLowFpr
                                 : rsbf::PlanMode::kBalanced;
    if (k != 0) c.num_filters = k;
    c.sbf_cell_bits = sbf_cell_bits;
    c.sbf_decrements = sbf_decrements;
    return c;
  }
};

void print_plan_line(const char* label, const rsbf::FilterPlan& p) {
  std::printf("%-9s k=%llu s=%llu (uses %llu of %llu bits)\n", label,
              static_cast<unsigned long long>(p.num_filters), static_cast<unsigned long long>(p.filter_bits),
              static_cast<unsigned long long>(p.num_filters * p.filter_bits),
              static_cast<unsigned long long>(p.memory_bits));
}

int cmd_plan(std::uint64_t memory_bits, double fpr, double p_star) {
  const auto balanced = rsbf::plan(memory_bits, fpr, p_star, rsbf::PlanMode::kBalanced);
  std::printf("memory_bits=%llu fpr_threshold=%s p_star=%s\n", static_cast<unsigned long long>(memory_bits),
              rsbf::format_double(fpr).c_str(), rsbf::format_double(p_star).c_str());
  std::printf("k_raw=%.6f\n", balanced.k_raw);
  print_plan_line("balanced", balanced);
  print_plan_line("low-fnr", rsbf::plan(memory_bits, fpr, p_star, rsbf::PlanMode::kLowFnr));
  print_plan_line("low-fpr", rsbf::plan(memory_bits, fpr, p_star, rsbf::PlanMode::kLowFpr));
  return 0;
}

int cmd_gen(std::uint64_t length, double distinct, std::uint64_t universe, std::uint64_t seed,
            const std::string& out) {
  if (length == 0) throw rsbf::ValidationError("--length must be at least 1");
  rsbf::StreamSpec spec{length, std::nullopt, seed};
  if (universe != 0) {
    spec.universe = universe;
  } else if (distinct != 0.0) {
    spec.universe = rsbf::solve_universe(length, distinct);
  } else {
    throw rsbf::ValidationError("gen needs --distinct or --universe");
  }
  const auto stream = rsbf::generate(spec);
  rsbf::write_binary(out, stream);

  const auto labels = rsbf::duplicate_labels(stream);
  std::uint64_t distinct_count = 0;
  for (bool dup : labels) distinct_count += dup ? 0 : 1;
  const double expected = spec.universe ? rsbf::expected_distinct_fraction(length, *spec.universe) : 1.0;

  std::ofstream meta(out + ".meta", std::ios::trunc);
  if (!meta) throw rsbf::IoError("cannot write " + out + ".meta");
  meta << "format=u64le\n"
       << "length=" << length << '\n'
       << "universe=" << (spec.universe ? std::to_string(*spec.universe) : std::string("without-replacement"))
       << '\n'
       << "seed=" << seed << '\n'
       << "expected_distinct_fraction=" << rsbf::format_double(expected) << '\n'
       << "empirical_distinct_fraction="
       << rsbf::format_double(static_cast<double>(distinct_count) / static_cast<double>(length)) << '\n';
  if (!meta) throw rsbf::IoError("write failed for " + out + ".meta");
  std::printf("wrote %llu records (%llu bytes) to %s\n", static_cast<unsigned long long>(length),
              static_cast<unsigned long long>(length * rsbf::kRecordBytes), out.c_str());
  return 0;
}

void print_summary(std::FILE* out, const rsbf::MetricsWindow& s) {
  std::fprintf(out, "summary end_index=%llu fp=%llu fn=%llu true_distinct=%llu true_duplicate=%llu cum_fpr=%.6f "
              "cum_fnr=%.6f ones_total=%llu\n",
              static_cast<unsigned long long>(s.end_index), static_cast<unsigned long long>(s.window_fp),
              static_cast<unsigned long long>(s.window_fn), static_cast<unsigned long long>(s.window_true_distinct),
              static_cast<unsigned long long>(s.window_true_duplicate), s.cum_fpr, s.cum_fnr,
              static_cast<unsigned long long>(s.ones_total));
}

void write_report(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw rsbf::IoError("cannot open " + path + " for writing");
  out << text;
  if (!out) throw rsbf::IoError("write failed for " + path);
}

int cmd_run(const std::string& algo, const FilterOptions& filter, const InputOptions& input,
            const std::string& report) {
  rsbf::RunConfig config = filter.config();
  config.algorithm = rsbf::parse_algorithm(algo);
  rsbf::validate(config);
  const auto stream = input.load(config.seed, config.input_description);
  const auto result = rsbf::run(config, stream);

  std::ostringstream csv;
  rsbf::write_run_csv(csv, result.header, result.rows);
  if (!report.empty()) write_report(report, csv.str());
  // Keep stdout pure CSV when the report goes there.
  print_summary(report == "-" ? stderr : stdout, result.summary());
  return 0;
}

int cmd_compare(const std::vector<std::uint64_t>& memories, const std::vector<std::string>& algos,
                const FilterOptions& filter, const InputOptions& input, const std::string& report) {
  rsbf::RunConfig config = filter.config();
  std::vector<rsbf::Algorithm> algorithms;
  for (const auto& a : algos) algorithms.push_back(rsbf::parse_algorithm(a));
  if (memories.empty() || algorithms.empty()) throw rsbf::ValidationError("compare needs memories and algorithms");
  for (std::uint64_t m : memories) {
    rsbf::RunConfig probe = config;
    probe.memory_bits = m;
    for (auto a : algorithms) {
      probe.algorithm = a;
      rsbf::validate(probe);
    }
  }
  const auto stream = input.load(config.seed, config.input_description);
  const auto rows = rsbf::compare(config, memories, algorithms, stream);

  rsbf::HeaderFields header = rsbf::describe(config);
  std::erase_if(header, [](const auto& kv) {
    return kv.first == "algorithm" || kv.first == "memory_bits" || kv.first == "num_filters" ||
           kv.first == "filter_bits" || kv.first.starts_with("sbf_");
  });
  std::string memory_list, algo_list;
  for (auto m : memories) memory_list += (memory_list.empty() ? "" : ";") + std::to_string(m);
  for (auto a : algorithms) algo_list += (algo_list.empty() ? "" : ";") + std::string(rsbf::to_string(a));
  header.emplace_back("memories", memory_list);
  header.emplace_back("algorithms", algo_list);
  header.emplace_back("sbf_cell_bits", std::to_string(config.sbf_cell_bits));
  header.emplace_back("sbf_decrements", config.sbf_decrements == 0 ? "k*(2^d-1)" : std::to_string(config.sbf_decrements));

  std::ostringstream csv;
  rsbf::write_compare_csv(csv, header, rows);
  write_report(report, csv.str());
  return 0;
}

const char* flag(bool valid) { return valid ? "valid" : "outside-validity"; }

int cmd_predict(std::uint64_t m, std::uint64_t s, std::uint64_t k, std::uint64_t universe, double ones,
                double insert_prob) {
  if (m < 1 || s < 1 || k < 1 || universe < 1) throw rsbf::ValidationError("predict needs m, s, k, U >= 1");
  if (ones < 0.0) ones = static_cast<double>(s) / 2.0;
  if (insert_prob < 0.0) insert_prob = std::min(1.0, static_cast<double>(s) / static_cast<double>(m));
  if (ones > static_cast<double>(s) || insert_prob > 1.0) {
    throw rsbf::ValidationError("predict needs 0 <= ones <= s and 0 <= p <= 1");
  }
  namespace th = rsbf::theory;
  const auto fpr = th::rsbf_fpr_bound(m, s, k, universe);
  const auto fnr = th::rsbf_fnr_bound(m, s, k, universe);
  const auto initial = th::initial_fpr_components(s, k);
  const auto step = th::expected_ones_step(ones, static_cast<double>(s), insert_prob);
  const double beta = ones / static_cast<double>(s);

  std::printf("inputs m=%llu s=%llu k=%llu U=%llu ones=%s p_i=%s\n", static_cast<unsigned long long>(m),
              static_cast<unsigned long long>(s), static_cast<unsigned long long>(k),
              static_cast<unsigned long long>(universe), rsbf::format_double(ones).c_str(),
              rsbf::format_double(insert_prob).c_str());
  std::printf("%-22s %-14.6g %s\n", "fpr_bound", fpr.value, flag(fpr.valid));
  std::printf("%-22s %-14.6g %s\n", "fnr_bound", fnr.value, flag(fnr.valid));
  std::printf("%-22s %-14.6g %s\n", "fnr_asymptote", th::rsbf_fnr_asymptote(k, universe), flag(true));
  std::printf("%-22s %-14.6g %s\n", "classic_fpr", th::classic_fpr(static_cast<double>(m),
                                                                   static_cast<double>(k * s), static_cast<double>(k)),
              flag(true));
  std::printf("%-22s %-14.6g %s\n", "initial_fpr_exact", initial.exact, flag(true));
  std::printf("%-22s %-14.6g %s\n", "initial_fpr_approx", initial.approx, flag(true));
  std::printf("%-22s %-14.6g %s\n", "ones_epsilon", step.epsilon, flag(true));
  std::printf("%-22s %-14.10g %s\n", "ones_expected_next", step.expected_next, flag(true));
  std::printf("%-22s %-14.6g %s\n", "ones_variance", th::ones_variance(beta, insert_prob), flag(true));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reservoir-sampling Bloom filter toolkit"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  try {
    seed = default_seed();
  } catch (const rsbf::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  }

  auto* plan_cmd = app.add_subcommand("plan", "Derive (k, s) from a memory budget and target FPR");
  std::uint64_t plan_memory = 0;
  double plan_fpr = 0.1, plan_pstar = rsbf::kDefaultPStar;
  plan_cmd->add_option("--memory-bits", plan_memory, "Total memory M in bits")->required();
  plan_cmd->add_option("--fpr", plan_fpr, "Target FPR")->required();
  plan_cmd->add_option("--p-star", plan_pstar, "Forced-insertion threshold");

  auto* gen_cmd = app.add_subcommand("gen", "Generate a uniform stream of 8-byte records");
  std::uint64_t gen_length = 0, gen_universe = 0, gen_seed = seed;
  double gen_distinct = 0.0;
  std::string gen_out;
  gen_cmd->add_option("--length", gen_length, "Number of records")->required();
  gen_cmd->add_option("--distinct", gen_distinct, "Expected distinct fraction (1 = all distinct)");
  gen_cmd->add_option("--universe", gen_universe, "Universe size");
  gen_cmd->add_option("--seed", gen_seed, "Seed (default: $RSBF_SEED or 1)");
  gen_cmd->add_option("--out", gen_out, "Output file (a .meta sidecar is written next to it)")->required();

  auto* run_cmd = app.add_subcommand("run", "Evaluate one filter on a stream and write a windowed CSV report");
  std::string run_algo = "rsbf", run_report;
  FilterOptions run_filter;
  run_filter.seed = seed;
  InputOptions run_input;
  run_cmd->add_option("--algo", run_algo, "rsbf, bloom or sbf");
  run_filter.add(run_cmd, true);
  run_input.add(run_cmd);
  run_cmd->add_option("--report", run_report, "CSV report path ('-' for stdout)");

  auto* predict_cmd = app.add_subcommand("predict", "Evaluate the closed-form FPR/FNR/stability predictors");
  std::uint64_t pm = 0, ps = 0, pk = 0, pu = 0;
  double pones = -1.0, pprob = -1.0;
  predict_cmd->add_option("--m", pm, "Stream length")->required();
  predict_cmd->add_option("--s", ps, "Bits per filter")->required();
  predict_cmd->add_option("--k", pk, "Number of filters")->required();
  predict_cmd->add_option("--universe", pu, "Universe size U")->required();
  predict_cmd->add_option("--ones", pones, "Set bits in one filter for the stability terms (default s/2)");
  predict_cmd->add_option("--p", pprob, "Insert probability for the stability terms (default s/m)");

  auto* compare_cmd = app.add_subcommand("compare", "Run rsbf/sbf/bloom across a memory grid on one input");
  std::vector<std::uint64_t> cmp_memories{16384, 65536, 4194304};
  std::vector<std::string> cmp_algos{"rsbf", "sbf", "bloom"};
  std::string cmp_report;
  FilterOptions cmp_filter;
  cmp_filter.seed = seed;
  InputOptions cmp_input;
  compare_cmd->add_option("--memories", cmp_memories, "Memory budgets in bits")->delimiter(',');
  compare_cmd->add_option("--algos", cmp_algos, "Algorithms")->delimiter(',');
  cmp_filter.add(compare_cmd, false);
  cmp_input.add(compare_cmd);
  compare_cmd->add_option("--report", cmp_report, "CSV report path ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*plan_cmd) return cmd_plan(plan_memory, plan_fpr, plan_pstar);
    if (*gen_cmd) return cmd_gen(gen_length, gen_distinct, gen_universe, gen_seed, gen_out);
    if (*run_cmd) return cmd_run(run_algo, run_filter, run_input, run_report);
    if (*predict_cmd) return cmd_predict(pm, ps, pk, pu, pones, pprob);
    if (*compare_cmd) return cmd_compare(cmp_memories, cmp_algos, cmp_filter, cmp_input, cmp_report);
  } catch (const rsbf::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  } catch (const rsbf::IoError& e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return kExitIo;
  }
  return 0;
}
